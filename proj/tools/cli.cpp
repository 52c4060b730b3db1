#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <json.hpp>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "longrun/config.hpp"
#include "longrun/core_dist.hpp"
#include "longrun/errors.hpp"
#include "longrun/inference.hpp"
#include "longrun/ldp.hpp"
#include "longrun/mgf.hpp"
#include "longrun/montecarlo.hpp"
#include "longrun/varadhan.hpp"

namespace longrun::cli {

namespace {

using json = nlohmann::ordered_json;

json ext(const ExtendedReal& v) {
  if (v.is_pos_inf()) return "inf";
  if (v.is_neg_inf()) return "-inf";
  return v.value();
}

// IEEE view of a double for JSON: infinities become strings, like ExtendedReal.
json num(double v) {
  if (std::isnan(v)) throw DomainError("computation produced NaN");
  return ext(ExtendedReal::from_double(v));
}

json interval_json(const ConfidenceInterval& ci) {
  return {{"method", to_string(ci.method)},
          {"level", ci.level},
          {"lower", ci.lower},
          {"upper", ci.upper},
          {"lower_4dp", round_4dp(ci.lower)},
          {"upper_4dp", round_4dp(ci.upper)}};
}

const auto open_unit = CLI::Validator(
    [](std::string& s) -> std::string {
      const double v = std::stod(s);
      return v > 0.0 && v < 1.0 ? "" : "value must lie strictly between 0 and 1";
    },
    "(0,1)");

// What a subcommand produces: either an envelope payload or raw CSV.
struct Outcome {
  json result;
  std::optional<std::string> csv;
  json extra = json::object();  // seed/generator record
};

struct Command {
  CLI::App* app;
  std::function<json()> params;
  std::function<Outcome()> run;
};

std::vector<std::uint64_t> parse_ladder(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(item, &used);
    if (used != item.size() || v < 2) throw CLI::ValidationError("--n-ladder", "bad entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw CLI::ValidationError("--n-ladder", "empty list");
  return out;
}

void write_error(std::ostream& out, std::ostream& err, const std::string& command,
                 const std::string& kind, const std::string& message) {
  json e = {{"command", command},
            {"error", {{"kind", kind}, {"message", message}}},
            {"version", version()}};
  out << e.dump() << '\n';
  err << "longrun: " << message << '\n';
}

}  // namespace

void apply_environment() {
  const char* raw = std::getenv("LONGRUN_MAX_N");
  if (raw == nullptr || *raw == '\0') return;
  std::size_t used = 0;
  const unsigned long long cap = std::stoull(raw, &used);
  if (used != std::string(raw).size() || cap < 1) {
    throw std::invalid_argument(std::string("LONGRUN_MAX_N must be a positive integer, got '") +
                                raw + "'");
  }
  NumericConfig cfg = default_config();
  cfg.max_n_single = cap;
  cfg.max_n_distribution = cap;
  set_default_config(cfg);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Longest head run in Bernoulli trials: exact law, large deviations, "
               "confidence intervals and simulation."};
  app.require_subcommand(1);
  app.set_version_flag("--version", version());
  bool quiet = false;
  app.add_flag("--quiet", quiet, "print only the result payload")->configurable(false);

  std::vector<Command> commands;
  auto add = [&](CLI::App* sub, std::function<json()> params, std::function<Outcome()> body) {
    commands.push_back({sub, std::move(params), std::move(body)});
  };

  // Shared option storage; each subcommand binds the ones it uses.
  std::uint64_t n = 0;
  double p = 0.0;
  std::optional<std::uint64_t> k;
  double lambda = 0.0;
  std::string method_name;
  std::string speed_name = "near";
  std::string family_name;
  double x = 0.0;
  std::string regime_name;
  std::optional<double> a_opt, b_opt;
  double t = 0.0, alpha_pow = 0.0;
  std::string ladder_text;
  double alpha = 0.05;
  std::optional<std::uint64_t> l_obs;
  std::optional<double> p_hat;
  int which = 1;
  std::string format = "json";
  std::uint64_t reps = 0, seed = 0;
  std::vector<std::string> method_list{"lr", "wilson", "cp"};
  unsigned threads = 0;

  // dist
  {
    auto* sub = app.add_subcommand("dist", "exact law of L(n); with --k, both tails and bounds");
    sub->add_option("--n", n, "number of trials")->required()->check(CLI::Range(1ULL, ~0ULL));
    sub->add_option("--p", p, "success probability")->required()->check(open_unit);
    sub->add_option("--k", k, "run length threshold");
    add(sub,
        [&] {
          json j = {{"n", n}, {"p", p}};
          if (k) j["k"] = *k;
          return j;
        },
        [&] {
          const BernoulliModel model(p);
          Outcome o;
          if (k) {
            const TailPair tails = log_tails(n, *k, model);
            json r = {{"k", *k},
                      {"prob_below", std::exp(tails.log_below)},
                      {"prob_at_least", std::exp(tails.log_at_least)},
                      {"log_prob_below", num(tails.log_below)},
                      {"log_prob_at_least", num(tails.log_at_least)}};
            if (*k >= 1 && *k <= n) {
              const LogBounds b = tail_bounds(n, *k, model);
              r["bounds"] = {{"lower", std::exp(b.log_lower)},
                             {"upper", std::exp(b.log_upper)},
                             {"log_lower", num(b.log_lower)},
                             {"log_upper", num(b.log_upper)}};
            } else {
              r["bounds"] = nullptr;
            }
            o.result = r;
            return o;
          }
          const auto dist = distribution(n, model);
          json pmf = json::array(), cdf = json::array();
          for (std::uint64_t i = 0; i <= n; ++i) {
            pmf.push_back(dist.pmf(i));
            cdf.push_back(dist.cdf(i));
          }
          const double mean = moment(dist, 1);
          o.result = {{"pmf", pmf},
                      {"cdf", cdf},
                      {"mean", mean},
                      {"variance", moment(dist, 2) - mean * mean},
                      {"nominal_value", nominal_value(n, model)}};
          if (n >= 2) o.result["mean_asymptotic"] = mean_asymptotic(n, model);
          return o;
        });
  }

  // mgf
  {
    auto* sub = app.add_subcommand("mgf", "normalized log-MGF of L(n) against its limit");
    sub->add_option("--n", n)->required()->check(CLI::Range(2ULL, ~0ULL));
    sub->add_option("--p", p)->required()->check(open_unit);
    sub->add_option("--lambda", lambda)->required();
    method_name = "exact";
    sub->add_option("--method", method_name)->check(CLI::IsMember({"exact", "recursion"}));
    sub->add_option("--speed", speed_name)->check(CLI::IsMember({"near", "away"}));
    add(sub,
        [&] {
          return json{{"n", n}, {"p", p}, {"lambda", lambda}, {"method", method_name},
                      {"speed", speed_name}};
        },
        [&] {
          const BernoulliModel model(p);
          const Speed speed = family_from_string(speed_name.c_str());
          const double log_m = method_name == "exact" ? log_mgf(distribution(n, model), lambda)
                                                      : log_mgf_recursive(n, model, lambda);
          const double scale = speed == Speed::near ? nominal_value(n, model)
                                                    : static_cast<double>(n);
          const double normalized = log_m / scale;
          const ExtendedReal limit = mgf_limit(lambda, model, speed);
          Outcome o;
          o.result = {{"regime", to_string(MgfRegime::classify(lambda, model).tag)},
                      {"log_mgf", num(log_m)},
                      {"normalized", num(normalized)},
                      {"limit", ext(limit)},
                      {"gap", limit.is_finite() ? num(std::abs(normalized - limit.value()))
                                                : json("inf")}};
          return o;
        });
  }

  // rate, cumulant, legendre
  {
    auto* sub = app.add_subcommand("rate", "closed-form rate function");
    sub->add_option("--family", family_name)->required()->check(CLI::IsMember({"near", "away"}));
    sub->add_option("--p", p)->required()->check(open_unit);
    sub->add_option("--x", x)->required();
    add(sub, [&] { return json{{"family", family_name}, {"p", p}, {"x", x}}; },
        [&] {
          Outcome o;
          o.result = {{"value", ext(rate({family_from_string(family_name.c_str()), BernoulliModel(p)}, x))}};
          return o;
        });
  }
  {
    auto* sub = app.add_subcommand("cumulant", "closed-form scaled cumulant");
    sub->add_option("--family", family_name)->required()->check(CLI::IsMember({"near", "away"}));
    sub->add_option("--p", p)->required()->check(open_unit);
    sub->add_option("--lambda", lambda)->required();
    add(sub, [&] { return json{{"family", family_name}, {"p", p}, {"lambda", lambda}}; },
        [&] {
          Outcome o;
          o.result = {{"value", ext(cumulant({family_from_string(family_name.c_str()),
                                              BernoulliModel(p)},
                                             lambda))}};
          return o;
        });
  }
  {
    auto* sub = app.add_subcommand("legendre", "numeric Legendre transform of the cumulant");
    sub->add_option("--family", family_name)->required()->check(CLI::IsMember({"near", "away"}));
    sub->add_option("--p", p)->required()->check(open_unit);
    sub->add_option("--x", x)->required();
    add(sub, [&] { return json{{"family", family_name}, {"p", p}, {"x", x}}; },
        [&] {
          const BernoulliModel model(p);
          const Family fam = family_from_string(family_name.c_str());
          const ExtendedReal numeric = legendre_numeric({fam, model}, x);
          const ExtendedReal closed = rate({fam, model}, x);
          json diff;
          if (numeric.is_finite() && closed.is_finite()) {
            diff = std::abs(numeric.value() - closed.value());
          } else {
            diff = numeric == closed ? json(0.0) : json("inf");
          }
          Outcome o;
          o.result = {{"numeric", ext(numeric)}, {"closed_form", ext(closed)}, {"abs_diff", diff}};
          return o;
        });
  }

  // ldp
  {
    auto* sub = app.add_subcommand("ldp", "finite-n large-deviation ratio against its limit");
    sub->add_option("--regime", regime_name)
        ->required()
        ->check(CLI::IsMember({"near-upper", "near-lower", "away", "interval"}));
    sub->add_option("--n", n)->required()->check(CLI::Range(2ULL, ~0ULL));
    sub->add_option("--p", p)->required()->check(open_unit);
    sub->add_option("--x", x, "deviation (near-upper, near-lower, away)");
    sub->add_option("--a", a_opt, "interval left end (interval)");
    sub->add_option("--b", b_opt, "interval right end (interval)");
    add(sub,
        [&] {
          json j = {{"regime", regime_name}, {"n", n}, {"p", p}};
          if (regime_name == "interval") {
            if (a_opt) j["a"] = *a_opt;
            if (b_opt) j["b"] = *b_opt;
          } else {
            j["x"] = x;
          }
          return j;
        },
        [&] {
          const BernoulliModel model(p);
          ExtendedReal value = ExtendedReal(0.0), limit = ExtendedReal(0.0);
          Bracket bracket{ExtendedReal(0.0), ExtendedReal(0.0)};
          if (regime_name == "interval") {
            if (!a_opt || !b_opt) {
              throw CLI::ValidationError("--a/--b", "required for --regime interval");
            }
            value = finite_n_interval_near(n, *a_opt, *b_opt, model);
            limit = limit_interval_near(*a_opt, *b_opt, model);
            bracket = bracket_interval_near(n, *a_opt, *b_opt, model);
          } else if (regime_name == "near-upper") {
            value = finite_n_upper_near(n, x, model);
            limit = ExtendedReal(limit_upper_near(x, model));
            bracket = bracket_upper_near(n, x, model);
          } else if (regime_name == "near-lower") {
            value = ExtendedReal(finite_n_lower_near(n, x, model));
            limit = ExtendedReal(limit_lower_near(x, model));
            bracket = bracket_lower_near(n, x, model);
          } else {
            value = ExtendedReal(finite_n_away(n, x, model));
            limit = ExtendedReal(limit_away(x, model));
            bracket = bracket_away(n, x, model);
          }
          json gap = "inf";
          if (value.is_finite() && limit.is_finite()) gap = std::abs(value.value() - limit.value());
          if (value == limit) gap = 0.0;
          Outcome o;
          o.result = {{"finite_n", ext(value)},
                      {"limit", ext(limit)},
                      {"gap", gap},
                      {"bracket", {{"low", ext(bracket.low)}, {"high", ext(bracket.high)}}}};
          return o;
        });
  }

  // varadhan
  {
    auto* sub = app.add_subcommand(
        "varadhan", "ln E exp{t (ln n)^(1-alpha) L^alpha} / ln n: closed form, numeric, finite n");
    sub->add_option("--t", t)->required()->check(CLI::PositiveNumber);
    sub->add_option("--alpha", alpha_pow)->required()->check(open_unit);
    sub->add_option("--p", p)->required()->check(open_unit);
    sub->add_option("--n-ladder", ladder_text, "comma-separated n values for the trajectory");
    add(sub,
        [&] {
          json j = {{"t", t}, {"alpha", alpha_pow}, {"p", p}};
          if (!ladder_text.empty()) j["n_ladder"] = parse_ladder(ladder_text);
          return j;
        },
        [&] {
          const BernoulliModel model(p);
          const double t_nominal = nominal_scale_coefficient(t, alpha_pow, model);
          const auto f = FunctionalSpec::power(t_nominal, alpha_pow);
          const double closed = power_coefficient(t, alpha_pow, model);
          const double numeric = functional_limit(f, Family::near, model) / model.lambda_p();
          const double threshold = power_threshold(alpha_pow, model);
          json trajectory = json::array();
          if (!ladder_text.empty()) {
            for (std::uint64_t m : parse_ladder(ladder_text)) {
              const double v = finite_n_functional(m, f, Family::near, model) / model.lambda_p();
              trajectory.push_back({{"n", m}, {"value", v}, {"gap", std::abs(v - closed)}});
            }
          }
          Outcome o;
          o.result = {{"closed_form", closed},
                      {"numeric", numeric},
                      {"abs_diff", std::abs(closed - numeric)},
                      {"threshold", threshold},
                      {"branch", t <= threshold ? "linear" : "power"},
                      {"t_nominal", t_nominal},
                      {"trajectory", trajectory}};
          return o;
        });
  }

  // ci
  {
    auto* sub = app.add_subcommand("ci", "confidence interval for p");
    sub->add_option("--method", method_name)
        ->required()
        ->check(CLI::IsMember({"lr", "wilson", "cp", "normal"}));
    sub->add_option("--n", n)->required()->check(CLI::Range(1ULL, ~0ULL));
    sub->add_option("--alpha", alpha)->check(open_unit);
    sub->add_option("--k", k, "number of successes");
    sub->add_option("--l-obs", l_obs, "observed longest run (lr)");
    sub->add_option("--p-hat", p_hat, "sample proportion (lr)")->check(open_unit);
    add(sub,
        [&] {
          json j = {{"method", method_name}, {"n", n}, {"alpha", alpha}};
          if (k) j["k"] = *k;
          if (l_obs) j["l_obs"] = *l_obs;
          if (p_hat) j["p_hat"] = *p_hat;
          return j;
        },
        [&] {
          const IntervalMethod m = interval_method_from_string(method_name);
          Outcome o;
          if (m == IntervalMethod::longest_run) {
            if (!l_obs) throw CLI::ValidationError("--l-obs", "required for --method lr");
            double ph;
            if (p_hat) {
              ph = *p_hat;
            } else if (k) {
              ph = static_cast<double>(*k) / static_cast<double>(n);
            } else {
              throw CLI::ValidationError("--p-hat", "required (or --k) for --method lr");
            }
            const double l_hat = estimate_run_length({n, *l_obs, ph});
            o.result = interval_json(lr_interval(n, l_hat, alpha));
            o.result["l_hat"] = l_hat;
            return o;
          }
          if (!k) throw CLI::ValidationError("--k", "required for --method " + method_name);
          o.result = interval_json(interval(m, *k, n, alpha));
          return o;
        });
  }

  // tables
  {
    auto* sub = app.add_subcommand("tables", "recompute the published interval tables");
    sub->add_option("--which", which)->required()->check(CLI::IsMember({1, 2}));
    sub->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--l-obs", l_obs, "add longest-run rows at this observed run");
    add(sub,
        [&] {
          json j = {{"which", which}, {"format", format}};
          if (l_obs) j["l_obs"] = *l_obs;
          return j;
        },
        [&] {
          const auto rows = reproduce_table(which, l_obs);
          Outcome o;
          if (format == "csv") {
            o.csv = table_csv(rows);
            return o;
          }
          json arr = json::array();
          for (const auto& r : rows) {
            arr.push_back({{"table_id", r.table_id},
                           {"block_p", r.block_p},
                           {"p_hat", r.p_hat},
                           {"n", r.n},
                           {"alpha", r.alpha},
                           {"method", to_string(r.ci.method)},
                           {"lower", r.ci.lower},
                           {"upper", r.ci.upper},
                           {"lower_4dp", r.lower_4dp},
                           {"upper_4dp", r.upper_4dp}});
          }
          o.result = {{"rows", arr}};
          return o;
        });
  }

  // simulate coverage | ratio
  {
    auto* sim = app.add_subcommand("simulate", "seeded Monte Carlo experiments");
    sim->require_subcommand(1);
    auto* cov = sim->add_subcommand("coverage", "coverage and width of interval methods");
    cov->add_option("--p", p)->required()->check(open_unit);
    cov->add_option("--n", n)->required()->check(CLI::Range(1ULL, ~0ULL));
    cov->add_option("--alpha", alpha)->check(open_unit);
    cov->add_option("--reps", reps)->required()->check(CLI::Range(1ULL, ~0ULL));
    cov->add_option("--seed", seed)->required();
    cov->add_option("--methods", method_list, "subset of lr,wilson,cp,normal")
        ->delimiter(',')
        ->check(CLI::IsMember({"lr", "wilson", "cp", "normal"}));
    cov->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
    cov->add_option("--threads", threads, "worker threads, 0 = all cores");
    add(cov,
        [&] {
          return json{{"p", p},         {"n", n},       {"alpha", alpha},
                      {"reps", reps},   {"seed", seed}, {"methods", method_list},
                      {"format", format}};
        },
        [&] {
          SimulationConfig cfg{p, n, alpha, reps, seed, {}};
          for (const auto& name : method_list) cfg.methods.push_back(interval_method_from_string(name));
          const CoverageReport report = coverage_experiment(cfg, threads);
          Outcome o;
          if (format == "csv") {
            o.csv = to_csv(report);
            return o;
          }
          o.result = json::parse(to_json(report));
          o.extra = {{"seed", seed}, {"generator", report.generator}};
          return o;
        });

    auto* ratio = sim->add_subcommand("ratio", "L(n) / log_{1/p} n over replications");
    ratio->add_option("--n", n)->required()->check(CLI::Range(2ULL, ~0ULL));
    ratio->add_option("--p", p)->required()->check(open_unit);
    ratio->add_option("--reps", reps)->required()->check(CLI::Range(1ULL, ~0ULL));
    ratio->add_option("--seed", seed)->required();
    ratio->add_option("--threads", threads, "worker threads, 0 = all cores");
    add(ratio, [&] { return json{{"n", n}, {"p", p}, {"reps", reps}, {"seed", seed}}; },
        [&] {
          const auto s = empirical_normalized_ratio(n, BernoulliModel(p), reps, seed, threads);
          Outcome o;
          o.result = {{"mean", s.mean}, {"sd", s.sd}, {"min", s.min}, {"max", s.max}};
          o.extra = {{"seed", seed}, {"generator", generator_id}};
          return o;
        });
  }

  std::vector<const char*> argv{"longrun"};
  for (const auto& a : args) argv.push_back(a.c_str());

  // Best guess at the command for error reports raised before dispatch.
  std::string command_name;
  for (const auto& a : args) {
    if (a.empty() || a[0] == '-') continue;
    command_name = a;
    break;
  }
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    for (const auto& c : commands) {
      if (!c.app->parsed()) continue;
      command_name = c.app->get_parent() == &app
                         ? c.app->get_name()
                         : c.app->get_parent()->get_name() + " " + c.app->get_name();
      const json params = c.params();
      const Outcome o = c.run();
      if (o.csv) {
        out << *o.csv;
        return exit_ok;
      }
      if (quiet) {
        out << o.result.dump() << '\n';
        return exit_ok;
      }
      json envelope = {{"command", command_name},
                       {"params", params},
                       {"result", o.result},
                       {"version", version()}};
      for (const auto& [key, value] : o.extra.items()) envelope[key] = value;
      out << envelope.dump() << '\n';
      return exit_ok;
    }
    throw CLI::RequiredError("a subcommand is required");
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    write_error(out, err, command_name, "argument_error", e.what());
    return exit_arguments;
  } catch (const Error& e) {
    write_error(out, err, command_name, e.kind(), e.what());
    return exit_module;
  } catch (const std::exception& e) {
    write_error(out, err, command_name, "internal_error", e.what());
    return exit_internal;
  }
}

}  // namespace longrun::cli
