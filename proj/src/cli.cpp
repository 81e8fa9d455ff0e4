#include "hyperderiv/cli.hpp"

#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "hyperderiv/errors.hpp"
#include "hyperderiv/fourier.hpp"
#include "hyperderiv/io.hpp"
#include "hyperderiv/moments.hpp"
#include "hyperderiv/operator.hpp"
#include "hyperderiv/sampling.hpp"

namespace hyperderiv::cli {
namespace {

struct RunConfig {
  std::string hypergroup;
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::string format = "text";
  unsigned order = 0;
  std::size_t rank = 0;
  std::size_t bound = 8;
  std::size_t count = 0;
};

struct Options {
  RunConfig config;
  std::string family;
  std::string pairs;
  std::string samples;
  std::string phi0;
  std::string alpha;
  std::string measure;
  std::string z;
  std::string lambda;
  std::size_t k = 0;
  bool taylor = false;
};

Complex parse_cli_complex(const std::string& text) {
  const auto comma = text.find(',');
  try {
    std::size_t used = 0;
    if (comma == std::string::npos) {
      const double re = std::stod(text, &used);
      if (used != text.size()) throw ParseError("");
      return {re, 0.0};
    }
    const std::string a = text.substr(0, comma);
    const std::string b = text.substr(comma + 1);
    const double re = std::stod(a, &used);
    if (used != a.size()) throw ParseError("");
    const double im = std::stod(b, &used);
    if (used != b.size()) throw ParseError("");
    return {re, im};
  } catch (const std::exception&) {
    throw ParseError("cannot read complex number '" + text + "' (use 're' or 're,im')");
  }
}

MultiIndex parse_cli_alpha(const std::string& text) {
  std::vector<unsigned> c;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long v = std::stol(part, &used);
      if (used != part.size() || v < 0) throw ParseError("");
      c.push_back(static_cast<unsigned>(v));
    } catch (const std::exception&) {
      throw ParseError("cannot read multi-index '" + text + "'");
    }
  }
  if (c.empty()) throw ParseError("empty multi-index");
  return MultiIndex(std::move(c));
}

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

void emit(const Report& report, const RunConfig& cfg, std::ostream& out) {
  if (cfg.format == "json") {
    out << io::to_json(report).dump(2) << "\n";
    return;
  }
  out << report.title << "\n";
  for (const auto& [k, v] : report.header) out << "  " << k << ": " << v << "\n";
  for (const auto& c : report.checks) {
    std::ostringstream res;
    res << std::scientific << std::setprecision(3) << c.worst_residual;
    out << "[" << to_string(c.status) << "] " << c.name << "  residual=" << res.str();
    if (c.status != Status::pass && c.counterexample) out << "  at " << *c.counterexample;
    out << "\n";
    if (c.note) out << "       note: " << *c.note << "\n";
  }
  out << (report.passed() ? "PASS" : "FAIL") << "\n";
}

int finish(Report report, const RunConfig& cfg, Tolerance tol, std::ostream& out) {
  report.header["seed"] = std::to_string(cfg.seed);
  report.header["tolerance"] = format_double(tol.relative);
  report.header["hypergroup"] = cfg.hypergroup;
  emit(report, cfg, out);
  return report.passed() ? ok : check_failed;
}

std::vector<PointPair> moment_pairs(const Options& o, const Hypergroup& h, Sampler& sampler) {
  if (!o.pairs.empty()) return io::parse_point_pairs(h, io::load_json(o.pairs));
  if (h.is_realline()) {
    std::vector<PointPair> out;
    const std::size_t n = o.config.count ? o.config.count : 50;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = sampler.uniform(-2.0, 2.0);
      const double y = sampler.uniform(-2.0, 2.0);
      out.emplace_back(Point::real(x), Point::real(y));
    }
    return out;
  }
  return all_pairs(h, o.config.bound);
}

std::vector<MeasurePair> measure_samples(const Options& o, const HypergroupPtr& h,
                                         Sampler& sampler) {
  if (!o.samples.empty()) return io::parse_measure_pairs(h, io::load_json(o.samples));
  const std::size_t n = o.config.count ? o.config.count : 30;
  return sampler.measure_pairs(h, n, 2, std::min<std::size_t>(o.config.bound, 4));
}

int cmd_axioms(const Options& o, Tolerance tol, std::ostream& out) {
  const auto h = io::load_hypergroup(o.config.hypergroup);
  return finish(check_axioms(*h, o.config.bound, tol), o.config, tol, out);
}

int cmd_exponentials(const Options& o, Tolerance tol, std::ostream& out) {
  const auto h = io::load_hypergroup(o.config.hypergroup);
  const auto exps = enumerate_exponentials(*h, tol);
  Report report;
  report.title = "exponentials of " + h->name();
  const auto pairs = all_pairs(*h, 0);
  for (std::size_t i = 0; i < exps.size(); ++i) {
    std::ostringstream values;
    values << std::setprecision(15);
    for (const auto& p : h->points()) values << (p == h->points().front() ? "" : ", ") << exps[i](p);
    report.header["m" + std::to_string(i)] = values.str();
    Report r = is_exponential(*h, exps[i], pairs, tol);
    for (auto& c : r.checks) c.name = "m" + std::to_string(i) + " " + c.name;
    report.append(r);
  }
  return finish(std::move(report), o.config, tol, out);
}

int cmd_verify_moments(const Options& o, Tolerance tol, std::ostream& out) {
  const auto h = io::load_hypergroup(o.config.hypergroup);
  const auto family = io::parse_family(h, io::load_json(o.family), o.config.order, o.config.rank);
  Sampler sampler(o.config.seed);
  const auto pairs = moment_pairs(o, *h, sampler);
  Report report = verify_moment_sequence(family, pairs, tol);
  report.header["pairs"] = std::to_string(pairs.size());
  return finish(std::move(report), o.config, tol, out);
}

int cmd_leibniz(const Options& o, Tolerance tol, std::ostream& out) {
  const auto h = io::load_hypergroup(o.config.hypergroup);
  const auto family = io::parse_family(h, io::load_json(o.family), o.config.order, o.config.rank);
  Sampler sampler(o.config.seed);
  const auto samples = measure_samples(o, h, sampler);
  const auto d = derivation_from_moments_unverified(family);
  const std::vector<CFunction> probes = {CFunction::constant(1.0),
                                         polynomial_function({0.5, 1.0, 0.25})};
  Report report = verify_leibniz(d, samples, probes, tol);
  if (h->polynomial()) report.append(verify_fourier_leibniz(d, samples, tol));
  report.header["samples"] = std::to_string(samples.size());
  return finish(std::move(report), o.config, tol, out);
}

CFunction parse_phi0(const std::string& spec, const HypergroupPtr& h) {
  if (spec.size() >= 2 && spec[0] == 'm' &&
      spec.find_first_not_of("0123456789", 1) == std::string::npos) {
    const auto exps = enumerate_exponentials(*h);
    const std::size_t i = std::stoul(spec.substr(1));
    if (i >= exps.size()) throw ParseError("hypergroup has only " + std::to_string(exps.size()) + " exponentials");
    return exps[i];
  }
  return io::parse_function(h, io::load_json(spec));
}

int cmd_search_moments(const Options& o, Tolerance tol, std::ostream& out) {
  const auto h = io::load_hypergroup(o.config.hypergroup);
  if (!h->finite()) throw ParseError("search-moments needs a finite hypergroup");
  const CFunction phi0 = parse_phi0(o.phi0, h);
  std::optional<MultiIndex> target;
  if (!o.alpha.empty()) target = parse_cli_alpha(o.alpha);
  const std::size_t rank = target ? target->rank() : (o.config.rank ? o.config.rank : 1);
  const unsigned order = target ? target->order() : (o.config.order ? o.config.order : 1);

  const auto steps = extend_iteratively(h, phi0, rank, order, tol);
  Report report;
  report.title = "moment extension on " + h->name() + " from " + phi0.description();
  bool trivial = true;
  for (const auto& step : steps) {
    if (target && !step.alpha.le(*target)) continue;
    const auto& s = step.solution;
    std::string verdict;
    if (!s.consistent) {
      verdict = "inconsistent";
    } else if (s.zero_only(tol)) {
      verdict = "unique: zero";
    } else if (s.unique()) {
      verdict = "unique: nonzero";
    } else {
      verdict = "affine: null-space dimension " + std::to_string(s.null_basis.size());
    }
    trivial = trivial && s.zero_only(tol);
    Check c{"extension[" + step.alpha.to_string() + "]",
            "phi_a(x * y) - phi_0(x) phi_a(y) - phi_a(x) phi_0(y) = lower-order terms",
            Status::pass, s.residual, std::nullopt, verdict};
    report.add(c);
    std::ostringstream sol;
    sol << std::setprecision(15) << "rank " << s.rank << "/" << s.unknowns;
    if (s.consistent) {
      sol << ", particular [";
      for (std::size_t i = 0; i < s.particular.size(); ++i) sol << (i ? ", " : "") << s.particular[i];
      sol << "]";
    }
    report.header["solution " + step.alpha.to_string()] = sol.str();
  }
  report.header["trivial"] = trivial ? "true" : "false";
  return finish(std::move(report), o.config, tol, out);
}

int cmd_transform(const Options& o, Tolerance tol, std::ostream& out) {
  const auto h = io::load_hypergroup(o.config.hypergroup);
  const Measure mu = io::parse_measure(h, io::load_json(o.measure));
  Report report;
  if (h->is_realline()) {
    if (!o.z.empty() || o.taylor) {
      throw DomainError("the real line has no polynomial transform; use --lambda");
    }
    if (o.lambda.empty()) throw DomainError("real-line transforms need --lambda");
    const Complex lambda = parse_cli_complex(o.lambda);
    const TransformEval hat(mu);
    report.title = "transform on the real line";
    std::ostringstream v;
    v << std::setprecision(17) << hat(lambda);
    report.header["value"] = v.str();
    return finish(std::move(report), o.config, tol, out);
  }
  const TransformPoly hat = transform(mu);
  report.title = "transform of " + mu.to_string();
  report.header["polynomial"] = hat.poly.to_string("z");
  report.header["coefficients"] = io::to_json(hat.poly).dump();
  if (!o.z.empty()) {
    const Complex z = parse_cli_complex(o.z);
    for (std::size_t k = 0; k <= o.k; ++k) report.append(fourier_derivative_identity(mu, k, z, tol));
  }
  if (o.taylor) {
    std::size_t degree = 0;
    for (const auto& [p, w] : mu.atoms()) degree = std::max(degree, p.as_index());
    const auto values = derivative_moments(mu, 0.0, degree + 1);
    const auto rec = taylor_reconstruct(h, values, degree);
    report.header["taylor"] = rec.transform.poly.to_string("lambda");
    CheckBuilder check("taylor reconstruction",
                       "mu^(lambda) = sum_k lambda^k / k! <D_k mu, 1> at z = 0", tol.relative);
    const double scale = std::max({1.0, hat.poly.max_abs_coeff(), rec.transform.poly.max_abs_coeff()});
    check.observe(tol.normalized(distance(hat.poly, rec.transform.poly), scale),
                  "reconstruction " + rec.transform.poly.to_string("lambda"));
    if (rec.truncated) check.note("truncated reconstruction");
    report.add(check.finish());
  }
  return finish(std::move(report), o.config, tol, out);
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--hypergroup", cfg.hypergroup,
                  "Preset (chebyshev, dtheta:<theta>, realline), JSON file or inline JSON")
      ->required();
  sub->add_option("--tol", cfg.tol, "Relative tolerance");
  sub->add_option("--seed", cfg.seed, "Seed for sampled checks");
  sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--order", cfg.order, "Truncation order N");
  sub->add_option("--rank", cfg.rank, "Rank r");
  sub->add_option("--bound", cfg.bound, "Sample bound for infinite carriers");
  sub->add_option("--count", cfg.count, "Number of random samples");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hypergroup measure algebras, moment sequences and higher order derivations"};
  app.name("hyperderiv");
  app.require_subcommand(1);
  Options o;

  auto* axioms = app.add_subcommand("axioms", "Check the hypergroup axioms");
  add_common(axioms, o.config);
  auto* exponentials = app.add_subcommand("exponentials", "List the exponentials of a finite hypergroup");
  add_common(exponentials, o.config);
  auto* verify = app.add_subcommand("verify-moments", "Verify a moment function sequence");
  add_common(verify, o.config);
  verify->add_option("--family", o.family, "Moment family (file or inline JSON)")->required();
  verify->add_option("--pairs", o.pairs, "Point pairs [[x, y], ...]");
  auto* leibniz = app.add_subcommand("leibniz", "Verify the generalized Leibniz rule");
  add_common(leibniz, o.config);
  leibniz->add_option("--family", o.family, "Moment family (file or inline JSON)")->required();
  leibniz->add_option("--samples", o.samples, "Measure pairs [[mu, nu], ...]");
  auto* search = app.add_subcommand("search-moments", "Solve for moment sequence extensions");
  add_common(search, o.config);
  search->add_option("--phi0", o.phi0, "m<i> for the i-th exponential, or a function literal")
      ->required();
  search->add_option("--alpha", o.alpha, "Target multi-index, comma separated");
  auto* tr = app.add_subcommand("transform", "Fourier-Laplace transform of a measure");
  add_common(tr, o.config);
  tr->add_option("--measure", o.measure, "Measure literal (file or inline JSON)")->required();
  tr->add_option("--z", o.z, "Check the derivative identity at z ('re' or 're,im')");
  tr->add_option("--k", o.k, "Highest derivative order for --z");
  tr->add_option("--lambda", o.lambda, "Evaluation point for real-line transforms");
  tr->add_flag("--taylor", o.taylor, "Reconstruct the transform from derivative moments at 0");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return ok;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return usage_error;
  }

  Tolerance tol = default_tolerance();
  if (o.config.tol) {
    if (!(*o.config.tol > 0.0)) {
      err << "error: --tol must be positive\n";
      return usage_error;
    }
    tol.relative = *o.config.tol;
  }

  try {
    if (axioms->parsed()) return cmd_axioms(o, tol, out);
    if (exponentials->parsed()) return cmd_exponentials(o, tol, out);
    if (verify->parsed()) return cmd_verify_moments(o, tol, out);
    if (leibniz->parsed()) return cmd_leibniz(o, tol, out);
    if (search->parsed()) return cmd_search_moments(o, tol, out);
    if (tr->parsed()) return cmd_transform(o, tol, out);
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << "\n";
    return check_failed;
  } catch (const HypergroupError& e) {
    err << "not a hypergroup: " << e.what() << "\n";
    return check_failed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
  return usage_error;
}

}  // namespace hyperderiv::cli
