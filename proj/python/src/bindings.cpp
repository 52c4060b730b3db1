#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "longrun/core_dist.hpp"
#include "longrun/errors.hpp"
#include "longrun/inference.hpp"
#include "longrun/ldp.hpp"
#include "longrun/mgf.hpp"
#include "longrun/montecarlo.hpp"
#include "longrun/special_functions.hpp"
#include "longrun/varadhan.hpp"

namespace py = pybind11;
using namespace longrun;

namespace {

Family family(const std::string& name) { return family_from_string(name.c_str()); }

double as_float(const ExtendedReal& v) { return v.to_double(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Longest head run in Bernoulli trials: exact law, large deviations, intervals.";
  m.attr("__version__") = version();

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<ResourceError>(m, "ResourceError", base.ptr());
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base.ptr());

  // exact law
  m.def("nominal_value", [](std::uint64_t n, double p) { return nominal_value(n, BernoulliModel(p)); },
        py::arg("n"), py::arg("p"));
  m.def("longest_run", [](const std::vector<std::uint8_t>& bits) { return longest_run(bits); },
        py::arg("bits"));
  m.def("log_prob_no_run",
        [](std::uint64_t n, std::uint64_t k, double p) {
          return log_prob_no_run(n, k, BernoulliModel(p));
        },
        py::arg("n"), py::arg("k"), py::arg("p"), "ln P(L(n) < k)");
  m.def("log_prob_run_at_least",
        [](std::uint64_t n, std::uint64_t k, double p) {
          return log_prob_run_at_least(n, k, BernoulliModel(p));
        },
        py::arg("n"), py::arg("k"), py::arg("p"), "ln P(L(n) >= k)");
  m.def("tail_bounds",
        [](std::uint64_t n, std::uint64_t k, double p) {
          const LogBounds b = tail_bounds(n, k, BernoulliModel(p));
          return py::make_tuple(b.log_lower, b.log_upper);
        },
        py::arg("n"), py::arg("k"), py::arg("p"), "(log_lower, log_upper) on ln P(L(n) < k)");
  m.def("pmf",
        [](std::uint64_t n, double p) {
          const auto d = distribution(n, BernoulliModel(p));
          std::vector<double> out(n + 1);
          for (std::uint64_t k = 0; k <= n; ++k) out[k] = d.pmf(k);
          return out;
        },
        py::arg("n"), py::arg("p"), "P(L(n) = k) for k = 0..n");
  m.def("cdf",
        [](std::uint64_t n, double p) {
          const auto d = distribution(n, BernoulliModel(p));
          std::vector<double> out(n + 1);
          for (std::uint64_t k = 0; k <= n; ++k) out[k] = d.cdf(k);
          return out;
        },
        py::arg("n"), py::arg("p"), "P(L(n) <= k) for k = 0..n");
  m.def("moment",
        [](std::uint64_t n, double p, unsigned order) {
          return moment(distribution(n, BernoulliModel(p)), order);
        },
        py::arg("n"), py::arg("p"), py::arg("order") = 1);
  m.def("mean_asymptotic",
        [](std::uint64_t n, double p) { return mean_asymptotic(n, BernoulliModel(p)); },
        py::arg("n"), py::arg("p"));

  // moment generating function
  m.def("log_mgf",
        [](std::uint64_t n, double p, double lambda, const std::string& method) {
          const BernoulliModel model(p);
          if (method == "exact") return log_mgf(distribution(n, model), lambda);
          if (method == "recursion") return log_mgf_recursive(n, model, lambda);
          throw InvalidArgument("method must be exact or recursion");
        },
        py::arg("n"), py::arg("p"), py::arg("lam"), py::arg("method") = "exact");
  m.def("normalized_log_mgf",
        [](std::uint64_t n, double p, double lambda, const std::string& speed) {
          return normalized_log_mgf(n, BernoulliModel(p), lambda, family(speed));
        },
        py::arg("n"), py::arg("p"), py::arg("lam"), py::arg("speed") = "near");
  m.def("mgf_limit",
        [](double p, double lambda, const std::string& speed) {
          return as_float(mgf_limit(lambda, BernoulliModel(p), family(speed)));
        },
        py::arg("p"), py::arg("lam"), py::arg("speed") = "near");
  m.def("regime",
        [](double p, double lambda) {
          return std::string(to_string(MgfRegime::classify(lambda, BernoulliModel(p)).tag));
        },
        py::arg("p"), py::arg("lam"));

  // large deviations
  m.def("rate",
        [](const std::string& fam, double p, double x) {
          return as_float(rate({family(fam), BernoulliModel(p)}, x));
        },
        py::arg("family"), py::arg("p"), py::arg("x"));
  m.def("cumulant",
        [](const std::string& fam, double p, double lambda) {
          return as_float(cumulant({family(fam), BernoulliModel(p)}, lambda));
        },
        py::arg("family"), py::arg("p"), py::arg("lam"));
  m.def("legendre_numeric",
        [](const std::string& fam, double p, double x) {
          return as_float(legendre_numeric({family(fam), BernoulliModel(p)}, x));
        },
        py::arg("family"), py::arg("p"), py::arg("x"));
  m.def("finite_n_upper_near",
        [](std::uint64_t n, double p, double x) {
          return as_float(finite_n_upper_near(n, x, BernoulliModel(p)));
        },
        py::arg("n"), py::arg("p"), py::arg("x"));
  m.def("finite_n_lower_near",
        [](std::uint64_t n, double p, double x) { return finite_n_lower_near(n, x, BernoulliModel(p)); },
        py::arg("n"), py::arg("p"), py::arg("x"));
  m.def("finite_n_away",
        [](std::uint64_t n, double p, double x) { return finite_n_away(n, x, BernoulliModel(p)); },
        py::arg("n"), py::arg("p"), py::arg("x"));
  m.def("finite_n_interval_near",
        [](std::uint64_t n, double p, double a, double b) {
          return as_float(finite_n_interval_near(n, a, b, BernoulliModel(p)));
        },
        py::arg("n"), py::arg("p"), py::arg("a"), py::arg("b"));

  // power functional
  m.def("power_coefficient",
        [](double t, double alpha, double p) { return power_coefficient(t, alpha, BernoulliModel(p)); },
        py::arg("t"), py::arg("alpha"), py::arg("p"));
  m.def("power_threshold",
        [](double alpha, double p) { return power_threshold(alpha, BernoulliModel(p)); },
        py::arg("alpha"), py::arg("p"));
  m.def("power_limit_numeric",
        [](double t, double alpha, double p) {
          const BernoulliModel model(p);
          const auto f = FunctionalSpec::power(nominal_scale_coefficient(t, alpha, model), alpha);
          return functional_limit(f, Family::near, model) / model.lambda_p();
        },
        py::arg("t"), py::arg("alpha"), py::arg("p"),
        "numeric counterpart of power_coefficient");
  m.def("power_finite_n",
        [](std::uint64_t n, double t, double alpha, double p) {
          const BernoulliModel model(p);
          const auto f = FunctionalSpec::power(nominal_scale_coefficient(t, alpha, model), alpha);
          return finite_n_functional(n, f, Family::near, model) / model.lambda_p();
        },
        py::arg("n"), py::arg("t"), py::arg("alpha"), py::arg("p"),
        "ln E exp{t (ln n)^(1-alpha) L(n)^alpha} / ln n");

  // intervals
  py::class_<ConfidenceInterval>(m, "ConfidenceInterval")
      .def_property_readonly("method", [](const ConfidenceInterval& c) { return to_string(c.method); })
      .def_readonly("level", &ConfidenceInterval::level)
      .def_readonly("lower", &ConfidenceInterval::lower)
      .def_readonly("upper", &ConfidenceInterval::upper)
      .def_property_readonly("width", &ConfidenceInterval::width)
      .def("contains", &ConfidenceInterval::contains, py::arg("p"))
      .def("__repr__", [](const ConfidenceInterval& c) {
        std::ostringstream s;
        s << "ConfidenceInterval(" << to_string(c.method) << ", level=" << c.level
          << ", lower=" << c.lower << ", upper=" << c.upper << ")";
        return s.str();
      });
  m.def("estimate_run_length",
        [](std::uint64_t n, std::uint64_t l_obs, double p_hat) {
          return estimate_run_length({n, l_obs, p_hat});
        },
        py::arg("n"), py::arg("l_obs"), py::arg("p_hat"));
  m.def("lr_interval", &lr_interval, py::arg("n"), py::arg("l_hat"), py::arg("alpha") = 0.05);
  m.def("wilson_interval", &wilson_interval, py::arg("k"), py::arg("n"), py::arg("alpha") = 0.05);
  m.def("clopper_pearson_interval", &clopper_pearson_interval, py::arg("k"), py::arg("n"),
        py::arg("alpha") = 0.05);
  m.def("normal_interval", &normal_interval, py::arg("k"), py::arg("n"), py::arg("alpha") = 0.05);
  m.def("reproduce_table",
        [](int which, std::optional<std::uint64_t> l_obs) {
          py::list rows;
          for (const auto& r : reproduce_table(which, l_obs)) {
            py::dict d;
            d["table_id"] = r.table_id;
            d["block_p"] = r.block_p;
            d["p_hat"] = r.p_hat;
            d["n"] = r.n;
            d["alpha"] = r.alpha;
            d["method"] = to_string(r.ci.method);
            d["lower"] = r.ci.lower;
            d["upper"] = r.ci.upper;
            d["lower_4dp"] = r.lower_4dp;
            d["upper_4dp"] = r.upper_4dp;
            rows.append(d);
          }
          return rows;
        },
        py::arg("which"), py::arg("l_obs") = py::none());

  // special functions
  m.def("std_normal_quantile", &special::std_normal_quantile, py::arg("q"));
  m.def("regularized_incomplete_beta", &special::regularized_incomplete_beta, py::arg("a"),
        py::arg("b"), py::arg("x"));
  m.def("beta_quantile", &special::beta_quantile, py::arg("a"), py::arg("b"), py::arg("q"));

  // simulation
  m.def("coverage_experiment_json",
        [](double p, std::uint64_t n, double alpha, std::uint64_t reps, std::uint64_t seed,
           const std::vector<std::string>& methods, unsigned threads) {
          SimulationConfig cfg{p, n, alpha, reps, seed, {}};
          for (const auto& s : methods) cfg.methods.push_back(interval_method_from_string(s));
          py::gil_scoped_release release;
          return to_json(coverage_experiment(cfg, threads));
        },
        py::arg("p"), py::arg("n"), py::arg("alpha"), py::arg("reps"), py::arg("seed"),
        py::arg("methods"), py::arg("threads") = 0);
  m.def("empirical_normalized_ratio",
        [](std::uint64_t n, double p, std::uint64_t reps, std::uint64_t seed, unsigned threads) {
          RatioSummary s;
          {
            py::gil_scoped_release release;
            s = empirical_normalized_ratio(n, BernoulliModel(p), reps, seed, threads);
          }
          py::dict d;
          d["mean"] = s.mean;
          d["sd"] = s.sd;
          d["min"] = s.min;
          d["max"] = s.max;
          return d;
        },
        py::arg("n"), py::arg("p"), py::arg("reps"), py::arg("seed"), py::arg("threads") = 0);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int status = cli::run(args, out, err);
          return py::make_tuple(status, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line tool in-process: (status, stdout, stderr).");
}
