#include "hyperderiv/io.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "hyperderiv/errors.hpp"

namespace hyperderiv::io {
namespace {

template <class F>
auto guarded(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(what + ": " + e.what());
  }
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::size_t parse_size(const json& j, const char* what) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return j.get<std::size_t>();
  throw ParseError(std::string(what) + " must be a nonnegative integer");
}

double parse_double(const json& j, const char* what) {
  if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
  return j.get<double>();
}

}  // namespace

// ---------------------------------------------------------------------------
// Scalars and points

Complex parse_complex(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("complex value must be a number or [re, im], got " + j.dump());
}

json to_json(Complex c) { return json::array({c.real(), c.imag()}); }

Point parse_point(const Hypergroup& h, const json& j) {
  Point p;
  if (h.is_realline()) {
    p = Point::real(parse_double(j, "real point"));
  } else {
    p = Point::index(parse_size(j, "index point"));
  }
  if (!h.contains(p)) throw ParseError("point " + p.to_string() + " is not in the carrier");
  return p;
}

json to_json(const Point& p) {
  if (p.is_index()) return p.as_index();
  return p.as_real();
}

// ---------------------------------------------------------------------------
// Hypergroups

HypergroupPtr hypergroup_from_preset(const std::string& name) {
  if (name == "chebyshev") return Hypergroup::make(PolynomialHypergroup::chebyshev());
  if (name == "realline") return Hypergroup::make(RealLineGroup{});
  const std::string prefix = "dtheta:";
  if (name.rfind(prefix, 0) == 0) {
    const std::string arg = name.substr(prefix.size());
    std::size_t used = 0;
    double theta = 0.0;
    try {
      theta = std::stod(arg, &used);
    } catch (const std::exception&) {
      throw ParseError("cannot read theta in preset '" + name + "'");
    }
    if (used != arg.size()) throw ParseError("cannot read theta in preset '" + name + "'");
    try {
      return Hypergroup::make(dtheta_hypergroup(theta));
    } catch (const DomainError& e) {
      throw ParseError("preset '" + name + "': " + e.what());
    }
  }
  throw ParseError("unknown hypergroup preset '" + name + "'");
}

HypergroupPtr parse_hypergroup(const json& j) {
  return guarded("hypergroup", [&]() -> HypergroupPtr {
    if (j.is_string()) return hypergroup_from_preset(j.get<std::string>());
    const std::string kind = field(j, "kind").get<std::string>();
    try {
      if (kind == "realline") return Hypergroup::make(RealLineGroup{});
      if (kind == "finite") {
        const std::size_t size = parse_size(field(j, "size"), "size");
        const std::size_t identity = parse_size(field(j, "identity"), "identity");
        std::vector<FiniteHypergroup::Entry> entries;
        for (const auto& e : field(j, "table")) {
          if (!e.is_array() || e.size() != 3) throw ParseError("table entry must be [i, j, weights]");
          FiniteHypergroup::Entry entry{parse_size(e[0], "row"), parse_size(e[1], "column"), {}};
          for (const auto& kw : e[2]) {
            if (!kw.is_array() || kw.size() != 2) throw ParseError("weight must be [k, w]");
            entry.weights.emplace_back(Point::index(parse_size(kw[0], "support index")),
                                       parse_double(kw[1], "weight"));
          }
          entries.push_back(std::move(entry));
        }
        return Hypergroup::make(FiniteHypergroup(size, identity, std::move(entries),
                                                 j.value("name", std::string("finite"))));
      }
      if (kind == "polynomial") {
        const json& coeffs = field(j, "coeffs");
        if (coeffs.is_string()) {
          if (coeffs.get<std::string>() != "chebyshev") {
            throw ParseError("unknown coefficient preset '" + coeffs.get<std::string>() + "'");
          }
          return Hypergroup::make(PolynomialHypergroup::chebyshev());
        }
        std::vector<RecurrenceCoefficients> rows;
        for (const auto& r : coeffs) {
          if (!r.is_array() || r.size() != 3) throw ParseError("coefficient row must be [a, b, c]");
          rows.push_back({parse_double(r[0], "a_n"), parse_double(r[1], "b_n"),
                          parse_double(r[2], "c_n")});
        }
        return Hypergroup::make(PolynomialHypergroup::from_rows(
            parse_double(field(j, "a0"), "a0"), parse_double(field(j, "b0"), "b0"),
            std::move(rows), j.value("name", std::string("polynomial"))));
      }
    } catch (const DomainError& e) {
      throw ParseError(std::string("invalid hypergroup: ") + e.what());
    }
    throw ParseError("unknown hypergroup kind '" + kind + "'");
  });
}

json load_json(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    std::ifstream in(spec);
    if (!in) throw ParseError("cannot open '" + spec + "'");
    try {
      return json::parse(in);
    } catch (const json::exception& e) {
      throw ParseError("'" + spec + "' is not valid JSON: " + e.what());
    }
  }
  try {
    return json::parse(spec);
  } catch (const json::exception&) {
    throw ParseError("'" + spec + "' is neither a readable file nor valid JSON");
  }
}

HypergroupPtr load_hypergroup(const std::string& spec) {
  if (spec == "chebyshev" || spec == "realline" || spec.rfind("dtheta:", 0) == 0) {
    return hypergroup_from_preset(spec);
  }
  return parse_hypergroup(load_json(spec));
}

// ---------------------------------------------------------------------------
// Measures and functions

Measure parse_measure(const HypergroupPtr& h, const json& j) {
  return guarded("measure", [&] {
    if (!j.is_array()) throw ParseError("measure must be a list of [point, weight]");
    std::vector<Measure::Atom> atoms;
    for (const auto& a : j) {
      if (!a.is_array() || a.size() != 2) throw ParseError("measure atom must be [point, weight]");
      atoms.emplace_back(parse_point(*h, a[0]), parse_complex(a[1]));
    }
    try {
      return Measure(h, std::move(atoms));
    } catch (const DomainError& e) {
      throw ParseError(std::string("invalid measure: ") + e.what());
    }
  });
}

json to_json(const Measure& mu) {
  json out = json::array();
  for (const auto& [p, w] : mu.atoms()) out.push_back(json::array({to_json(p), to_json(w)}));
  return out;
}

CFunction parse_function(const HypergroupPtr& h, const json& j) {
  return guarded("function", [&]() -> CFunction {
    const std::string kind = field(j, "kind").get<std::string>();
    if (kind == "table") {
      std::map<Point, Complex> values;
      for (const auto& v : field(j, "values")) {
        if (!v.is_array() || v.size() != 2) throw ParseError("table value must be [point, value]");
        values[parse_point(*h, v[0])] = parse_complex(v[1]);
      }
      return CFunction::table(std::move(values));
    }
    if (kind == "constant") return CFunction::constant(parse_complex(field(j, "value")));
    if (kind == "polynomial") {
      std::vector<Complex> coeffs;
      for (const auto& c : field(j, "coeffs")) coeffs.push_back(parse_complex(c));
      return polynomial_function(std::move(coeffs));
    }
    if (kind == "perturbed") {
      return parse_function(h, field(j, "base"))
          .perturbed(parse_point(*h, field(j, "point")), parse_complex(field(j, "delta")));
    }
    if (kind == "exponential" || kind == "moment") {
      const std::size_t k = kind == "moment" ? parse_size(field(j, "k"), "k") : 0;
      if (h->is_realline()) return realline_moment_function(k, parse_complex(field(j, "lambda")));
      if (h->polynomial()) return polynomial_derivative_function(h, k, parse_complex(field(j, "z")));
      if (kind == "exponential") {
        const auto all = enumerate_exponentials(*h);
        const std::size_t i = parse_size(field(j, "index"), "index");
        if (i >= all.size()) throw ParseError("exponential index out of range");
        return all[i];
      }
      throw ParseError("moment functions need the real line or a polynomial hypergroup");
    }
    throw ParseError("unknown function kind '" + kind + "'");
  });
}

MultiIndex parse_multi_index(const json& j) {
  return guarded("multi-index", [&] {
    if (j.is_number()) return MultiIndex{static_cast<unsigned>(parse_size(j, "multi-index"))};
    if (!j.is_array() || j.empty()) throw ParseError("multi-index must be a nonempty list");
    std::vector<unsigned> c;
    for (const auto& x : j) c.push_back(static_cast<unsigned>(parse_size(x, "multi-index")));
    return MultiIndex(std::move(c));
  });
}

MomentSequence parse_family(const HypergroupPtr& h, const json& j, unsigned order,
                            std::size_t rank) {
  return guarded("family", [&]() -> MomentSequence {
    try {
      if (j.is_object() && j.contains("family")) {
        const std::string name = j.at("family").get<std::string>();
        const unsigned n = order ? order : j.value("order", 4u);
        const std::size_t r = rank ? rank : j.value("rank", std::size_t{1});
        std::optional<MomentSequence> base;
        if (name == "realline-moment") {
          if (!h->is_realline()) throw ParseError("realline-moment needs the realline hypergroup");
          base = realline_moment_sequence(h, parse_complex(field(j, "lambda")), n);
        } else if (name == "polynomial-derivative") {
          if (!h->polynomial()) throw ParseError("polynomial-derivative needs a polynomial hypergroup");
          base = polynomial_derivative_sequence(h, parse_complex(field(j, "z")), n);
        } else {
          throw ParseError("unknown builtin family '" + name + "'");
        }
        MomentSequence seq = *base;
        if (r != 1 || j.contains("weights")) {
          std::vector<Complex> weights(r, 1.0);
          if (j.contains("weights")) {
            weights.clear();
            for (const auto& w : j.at("weights")) weights.push_back(parse_complex(w));
            if (weights.size() != r) throw ParseError("need one weight per axis");
          }
          seq = lift_rank(seq, std::move(weights));
        }
        if (j.contains("perturb")) {
          const json& p = j.at("perturb");
          const MultiIndex alpha = parse_multi_index(field(p, "alpha"));
          seq = seq.with_entry(alpha, seq.at(alpha).perturbed(parse_point(*h, field(p, "point")),
                                                              parse_complex(field(p, "delta"))));
        }
        return seq;
      }
      const std::size_t r = parse_size(field(j, "rank"), "rank");
      const unsigned n = static_cast<unsigned>(parse_size(field(j, "order"), "order"));
      std::map<MultiIndex, CFunction> entries;
      for (const auto& e : field(j, "entries")) {
        if (!e.is_array() || e.size() != 2) throw ParseError("entry must be [alpha, function]");
        entries.emplace(parse_multi_index(e[0]), parse_function(h, e[1]));
      }
      return MomentSequence(h, r, n, std::move(entries));
    } catch (const DomainError& e) {
      throw ParseError(std::string("invalid family: ") + e.what());
    }
  });
}

std::vector<PointPair> parse_point_pairs(const Hypergroup& h, const json& j) {
  return guarded("point pairs", [&] {
    std::vector<PointPair> out;
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 2) throw ParseError("pair must be [x, y]");
      out.emplace_back(parse_point(h, p[0]), parse_point(h, p[1]));
    }
    return out;
  });
}

std::vector<MeasurePair> parse_measure_pairs(const HypergroupPtr& h, const json& j) {
  return guarded("measure pairs", [&] {
    std::vector<MeasurePair> out;
    for (const auto& p : j) {
      if (!p.is_array() || p.size() != 2) throw ParseError("sample must be [measure, measure]");
      out.emplace_back(parse_measure(h, p[0]), parse_measure(h, p[1]));
    }
    return out;
  });
}

json to_json(const Poly& p) {
  json out = json::array();
  for (const auto& c : p.coeffs()) out.push_back(to_json(c));
  return out;
}

// ---------------------------------------------------------------------------
// Reports

json to_json(const Check& c) {
  json j;
  j["name"] = c.name;
  j["anchor"] = c.anchor;
  j["status"] = to_string(c.status);
  // JSON has no infinity; null stands for an unbounded residual.
  j["worst_residual"] = std::isfinite(c.worst_residual) ? json(c.worst_residual) : json(nullptr);
  j["counterexample"] = c.counterexample ? json(*c.counterexample) : json(nullptr);
  if (c.note) j["note"] = *c.note;
  return j;
}

json to_json(const Report& r) {
  json j;
  j["title"] = r.title;
  j["header"] = r.header;
  j["status"] = r.passed() ? "pass" : "fail";
  j["checks"] = json::array();
  for (const auto& c : r.checks) j["checks"].push_back(to_json(c));
  return j;
}

Report report_from_json(const json& j) {
  return guarded("report", [&] {
    Report r;
    r.title = field(j, "title").get<std::string>();
    if (j.contains("header")) r.header = j.at("header").get<std::map<std::string, std::string>>();
    for (const auto& c : field(j, "checks")) {
      Check check;
      check.name = field(c, "name").get<std::string>();
      check.anchor = field(c, "anchor").get<std::string>();
      check.status = status_from_string(field(c, "status").get<std::string>());
      const json& w = field(c, "worst_residual");
      check.worst_residual = w.is_null() ? std::numeric_limits<double>::infinity() : w.get<double>();
      if (c.contains("counterexample") && !c.at("counterexample").is_null()) {
        check.counterexample = c.at("counterexample").get<std::string>();
      }
      if (c.contains("note")) check.note = c.at("note").get<std::string>();
      r.checks.push_back(std::move(check));
    }
    return r;
  });
}

}  // namespace hyperderiv::io
