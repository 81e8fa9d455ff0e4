#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "hyperderiv/cli.hpp"
#include "hyperderiv/errors.hpp"
#include "hyperderiv/fourier.hpp"
#include "hyperderiv/hypergroup.hpp"
#include "hyperderiv/io.hpp"
#include "hyperderiv/moments.hpp"
#include "hyperderiv/multi_index.hpp"
#include "hyperderiv/sampling.hpp"

namespace py = pybind11;
using namespace hyperderiv;
using nlohmann::json;

namespace {

// Reports cross the boundary as JSON text; the Python package decodes them.
std::string report_text(const Report& r) { return io::to_json(r).dump(); }

json parse_arg(const std::string& text) { return io::load_json(text); }

json from_python(const py::handle& o) {
  return json::parse(py::str(py::module_::import("json").attr("dumps")(o)).cast<std::string>());
}

py::object to_python(const Point& p) {
  if (p.is_index()) return py::int_(p.as_index());
  return py::float_(p.as_real());
}

std::vector<PointPair> pairs_or_default(const Hypergroup& h, const std::string& pairs) {
  return pairs.empty() ? default_pairs(h) : io::parse_point_pairs(h, parse_arg(pairs));
}

Tolerance tolerance_of(double rel) {
  Tolerance t = default_tolerance();
  if (rel > 0) t.relative = rel;
  return t;
}

}  // namespace

PYBIND11_MODULE(_hyperderiv, m) {
  m.doc() = "Moment functions, derivations and Fourier transforms on commutative hypergroups";

  auto base = py::register_exception<Error>(m, "Error");
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
  py::register_exception<HypergroupError>(m, "HypergroupError", base.ptr());
  py::register_exception<ParseError>(m, "ParseError", base.ptr());

  py::class_<Hypergroup, std::shared_ptr<Hypergroup>>(m, "Hypergroup")
      .def(py::init([](const std::string& spec) {
             return std::const_pointer_cast<Hypergroup>(io::load_hypergroup(spec));
           }),
           py::arg("spec"), "Preset name, JSON file path or inline JSON.")
      .def_property_readonly("name", &Hypergroup::name)
      .def_property_readonly("kind",
                             [](const Hypergroup& h) -> std::string {
                               if (h.finite()) return "finite";
                               if (h.polynomial()) return "polynomial";
                               return "realline";
                             })
      .def(
          "convolve_points",
          [](const Hypergroup& h, const py::object& x, const py::object& y) {
            py::list out;
            for (const auto& [p, w] :
                 convolve_points(h, io::parse_point(h, from_python(x)), io::parse_point(h, from_python(y))))
              out.append(py::make_tuple(to_python(p), w));
            return out;
          },
          py::arg("x"), py::arg("y"))
      .def(
          "check_axioms",
          [](const Hypergroup& h, std::size_t bound) { return report_text(check_axioms(h, bound)); },
          py::arg("bound") = 8)
      .def("exponentials",
           [](const Hypergroup& h) {
             std::vector<std::vector<Complex>> out;
             const auto pts = h.points();
             for (const auto& f : enumerate_exponentials(h)) {
               std::vector<Complex> values;
               for (const auto& p : pts) values.push_back(f(p));
               out.push_back(std::move(values));
             }
             return out;
           })
      .def(
          "linearization",
          [](const Hypergroup& h, std::size_t a, std::size_t b) {
            if (!h.polynomial()) throw DomainError("linearization needs a polynomial hypergroup");
            return h.polynomial()->linearization(a, b);
          },
          py::arg("m"), py::arg("n"))
      .def(
          "poly_derivative",
          [](const Hypergroup& h, std::size_t n, Complex z, std::size_t k) {
            if (!h.polynomial()) throw DomainError("poly_derivative needs a polynomial hypergroup");
            return h.polynomial()->derivatives(n, z, k)[k];
          },
          py::arg("n"), py::arg("z"), py::arg("k") = 0);

  m.def(
      "_verify_moments",
      [](const std::shared_ptr<Hypergroup>& h, const std::string& family, const std::string& pairs,
         unsigned order, std::size_t rank, double tol) {
        const auto phi = io::parse_family(h, parse_arg(family), order, rank);
        return report_text(verify_moment_sequence(phi, pairs_or_default(*h, pairs), tolerance_of(tol)));
      },
      py::arg("hypergroup"), py::arg("family"), py::arg("pairs") = "", py::arg("order") = 0,
      py::arg("rank") = 0, py::arg("tol") = 0.0);

  m.def(
      "_leibniz",
      [](const std::shared_ptr<Hypergroup>& h, const std::string& family, const std::string& samples,
         unsigned order, std::size_t rank, std::uint64_t seed, double tol) {
        const auto phi = io::parse_family(h, parse_arg(family), order, rank);
        std::vector<MeasurePair> ms;
        if (samples.empty()) {
          Sampler s(seed);
          ms = s.measure_pairs(h, 30, 2, h->is_realline() ? 2 : 4);
        } else {
          ms = io::parse_measure_pairs(h, parse_arg(samples));
        }
        const auto d = derivation_from_moments_unverified(phi);
        Report r = verify_leibniz(d, ms, {CFunction::constant(1.0)}, tolerance_of(tol));
        if (h->polynomial()) r.append(verify_fourier_leibniz(d, ms, tolerance_of(tol)));
        return report_text(r);
      },
      py::arg("hypergroup"), py::arg("family"), py::arg("samples") = "", py::arg("order") = 0,
      py::arg("rank") = 0, py::arg("seed") = 1, py::arg("tol") = 0.0);

  m.def(
      "_extend",
      [](const std::shared_ptr<Hypergroup>& h, std::size_t exponential, std::size_t rank,
         unsigned order) {
        const auto ex = enumerate_exponentials(*h);
        if (exponential >= ex.size()) throw DomainError("no exponential with that index");
        std::vector<std::tuple<std::vector<unsigned>, bool, bool, std::size_t>> out;
        for (const auto& step : extend_iteratively(h, ex[exponential], rank, order))
          out.push_back({step.alpha.components(), step.solution.consistent,
                         step.solution.zero_only(), step.solution.null_basis.size()});
        return out;
      },
      py::arg("hypergroup"), py::arg("exponential"), py::arg("rank") = 1, py::arg("order") = 3,
      "Iterated extension; yields (alpha, consistent, zero_only, null dimension) per step.");

  m.def(
      "transform",
      [](const std::shared_ptr<Hypergroup>& h, const std::string& measure) {
        return transform(io::parse_measure(h, parse_arg(measure))).poly.coeffs();
      },
      py::arg("hypergroup"), py::arg("measure"), "Monomial coefficients, lowest degree first.");

  m.def(
      "derivative_moments",
      [](const std::shared_ptr<Hypergroup>& h, const std::string& measure, Complex z,
         std::size_t count) {
        return derivative_moments(io::parse_measure(h, parse_arg(measure)), z, count);
      },
      py::arg("hypergroup"), py::arg("measure"), py::arg("z"), py::arg("count"));

  m.def(
      "taylor_reconstruct",
      [](const std::shared_ptr<Hypergroup>& h, const std::vector<Complex>& values, std::size_t degree) {
        const auto r = taylor_reconstruct(h, values, degree);
        return std::make_pair(r.transform.poly.coeffs(), r.truncated);
      },
      py::arg("hypergroup"), py::arg("values"), py::arg("degree"));

  m.def(
      "multi_binomial",
      [](const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
        return multi_binomial(MultiIndex(a), MultiIndex(b));
      },
      py::arg("alpha"), py::arg("beta"));

  m.def(
      "lower_indices",
      [](const std::vector<unsigned>& a) {
        std::vector<std::vector<unsigned>> out;
        for (const auto& b : lower_indices(MultiIndex(a))) out.push_back(b.components());
        return out;
      },
      py::arg("alpha"));

  m.def(
      "run_cli",
      [](std::vector<std::string> args) {
        args.insert(args.begin(), "hyperderiv");
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one CLI command; returns (exit code, stdout, stderr).");
}
