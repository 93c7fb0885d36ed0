// Command-line front end. JSON goes to stdout (or --out); exit codes:
// 0 success, 1 verify failures, 2 bad arguments, 3 malformed files,
// 4 feasibility guard.

#include "unif/concat.hpp"
#include "unif/counting.hpp"
#include "unif/degree.hpp"
#include "unif/gowers.hpp"
#include "unif/increment.hpp"
#include "unif/io.hpp"
#include "unif/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using nlohmann::json;

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    if (text.empty() || text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(out_path);
    if (!out) throw unif::IoError("cannot open " + out_path);
    out << text;
    if (text.empty() || text.back() != '\n') out << "\n";
  }
}

void emit_json(const json& j, const std::string& out_path) { emit(j.dump(2), out_path); }

json step_json(const unif::IncrementStep& s) {
  return json{{"i", s.i},           {"N", s.N},
              {"q", s.q},           {"alpha", s.alpha.str()},
              {"qprime", s.qprime}, {"a", s.a},
              {"Nprime", s.Nprime}, {"alpha_new", s.alpha_new.str()},
              {"alpha_value", s.alpha.value()}, {"alpha_new_value", s.alpha_new.value()}};
}

double parse_alpha(const std::string& s) { return unif::Rational::parse(s).value(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniformity-norm toolkit"};
  app.require_subcommand(1);

  std::string in_path, f0_path, f1_path, f2_path, set_path, out_path, alpha_str, suite, kind, mode_str = "derived";
  long long N = 0, q = 1, u = 1, s_order = 2, b_shift = 0, c_dir = 1, d_dir = 1, qmax = 8;
  long long nprime_min = 10, nprime_max = 0, max_steps = 16, tmax = 20, trials = 100, width = 16;
  long long plant_qprime = 1, plant_a = 0, plant_nprime = 1;
  double gamma = 0.5, alpha_in = 0.9, alpha_out = 0.3;
  std::uint64_t seed = 0;
  std::string d1 = "1/2", d2 = "1/2", d3 = "1/2";
  int grid_factor = 4;
  std::vector<std::string> dirs;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("--out", out_path, "output path (default: stdout)");
  };

  CLI::App* norm = app.add_subcommand("norm", "U^s norm power of a signal");
  norm->add_option("--input", in_path)->required();
  norm->add_option("--s", s_order);
  norm->add_option("--u", u);
  norm->add_option("--q", q);
  add_io(norm);

  CLI::App* box = app.add_subcommand("box", "box norm power over progression direction sets");
  box->add_option("--input", in_path)->required();
  box->add_option("--dir", dirs, "direction as step,len (repeatable)")->required();
  add_io(box);

  CLI::App* count = app.add_subcommand("count", "configuration count of a set");
  count->add_option("--set", set_path)->required();
  count->add_option("--N", N)->required();
  count->add_option("--q", q);
  add_io(count);

  CLI::App* dual = app.add_subcommand("dual", "dual function of (f0, f1)");
  dual->add_option("--f0", f0_path)->required();
  dual->add_option("--f1", f1_path)->required();
  dual->add_option("--N", N)->required();
  dual->add_option("--q", q);
  add_io(dual);

  CLI::App* boxavg = app.add_subcommand("boxavg", "triple box-norm average");
  boxavg->add_option("--input", in_path)->required();
  boxavg->add_option("--N", N)->required();
  boxavg->add_option("--q", q);
  boxavg->add_option("--delta2", d2);
  boxavg->add_option("--delta3", d3);
  boxavg->add_option("--seed", seed);
  add_io(boxavg);

  CLI::App* bnorm = app.add_subcommand("bnorm", "the b-shifted box norm power");
  bnorm->add_option("--input", in_path)->required();
  bnorm->add_option("--N", N)->required();
  bnorm->add_option("--q", q);
  bnorm->add_option("--b", b_shift);
  bnorm->add_option("--delta1", d1);
  bnorm->add_option("--delta2", d2);
  add_io(bnorm);

  CLI::App* invertbox = app.add_subcommand("invertbox", "constructive arithmetic box-norm inverse");
  invertbox->add_option("--input", in_path)->required();
  invertbox->add_option("--c", c_dir);
  invertbox->add_option("--d", d_dir);
  invertbox->add_option("--delta2", d2);
  invertbox->add_option("--grid-factor", grid_factor);
  invertbox->add_option("--out", out_path, "prefix for <out>.l.json / <out>.r.json");

  CLI::App* concat = app.add_subcommand("concat", "two-sided concatenation experiment");
  concat->add_option("--input", in_path)->required();
  concat->add_option("--N", N)->required();
  concat->add_option("--q", q);
  concat->add_option("--delta1", d1);
  concat->add_option("--delta2", d2);
  concat->add_option("--delta3", d3);
  add_io(concat);

  CLI::App* degree = app.add_subcommand("degree-lower", "s = 3 degree-lowering pipeline report");
  degree->add_option("--f0", f0_path)->required();
  degree->add_option("--f1", f1_path)->required();
  degree->add_option("--N", N)->required();
  degree->add_option("--q", q);
  degree->add_option("--u", u);
  degree->add_option("--gamma", gamma);
  degree->add_option("--tmax", tmax);
  add_io(degree);

  CLI::App* denom = app.add_subcommand("denom", "major-arc denominator search");
  denom->add_option("--alpha", alpha_str)->required();
  denom->add_option("--q", q);
  denom->add_option("--tmax", tmax);
  add_io(denom);

  CLI::App* increment = app.add_subcommand("increment", "single density-increment search");
  increment->add_option("--set", set_path)->required();
  increment->add_option("--N", N)->required();
  increment->add_option("--q", q);
  increment->add_option("--qmax", qmax);
  increment->add_option("--nprime-min", nprime_min);
  increment->add_option("--nprime-max", nprime_max);
  add_io(increment);

  CLI::App* iterate = app.add_subcommand("iterate", "full increment iteration, trace as CSV");
  iterate->add_option("--set", set_path)->required();
  iterate->add_option("--N", N)->required();
  iterate->add_option("--q", q);
  iterate->add_option("--qmax", qmax);
  iterate->add_option("--nprime-min", nprime_min);
  iterate->add_option("--nprime-max", nprime_max);
  iterate->add_option("--max-steps", max_steps);
  add_io(iterate);

  CLI::App* gen = app.add_subcommand("gen", "fixture generation");
  gen->add_option("--kind", kind, "greedy-free | planted")->required();
  gen->add_option("--N", N)->required();
  gen->add_option("--q", q);
  gen->add_option("--qprime", plant_qprime);
  gen->add_option("--a", plant_a);
  gen->add_option("--nprime", plant_nprime);
  gen->add_option("--alpha-in", alpha_in);
  gen->add_option("--alpha-out", alpha_out);
  gen->add_option("--seed", seed);
  add_io(gen);

  CLI::App* verify = app.add_subcommand("verify", "property-testing suites");
  verify->add_option("--suite", suite)->required();
  verify->add_option("--trials", trials);
  verify->add_option("--seed", seed);
  verify->add_option("--width", width);
  verify->add_option("--mode", mode_str, "paper | derived");
  add_io(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (norm->parsed()) {
      unif::Signal f = unif::load_signal(in_path);
      json j;
      if (norm->count("--u") || norm->count("--q"))
        j["value"] = unif::u_norm_local_pow(f, static_cast<int>(s_order), u, q);
      else
        j["value"] = std::abs(unif::u_norm_pow(f, static_cast<int>(s_order)));
      j["s"] = s_order;
      emit_json(j, out_path);
    } else if (box->parsed()) {
      unif::Signal f = unif::load_signal(in_path);
      std::vector<std::pair<long long, long long>> sl;
      for (const std::string& d : dirs) {
        auto comma = d.find(',');
        if (comma == std::string::npos) throw std::invalid_argument("--dir expects step,len");
        sl.emplace_back(std::stoll(d.substr(0, comma)), std::stoll(d.substr(comma + 1)));
      }
      emit_json(json{{"value", std::abs(unif::box_norm_pow(f, unif::BoxSpec::progressions(sl)))}},
                out_path);
    } else if (count->parsed()) {
      auto A = unif::load_set(set_path);
      auto inst = unif::ProgressionInstance::make(N, q);
      unif::Signal fA = unif::Signal::from_set(A);
      auto wits = unif::enumerate_progressions(A, inst);
      emit_json(json{{"lambda", std::llround(unif::lambda(fA, fA, fA, inst).real())},
                     {"witnesses", wits.size()}},
                out_path);
    } else if (dual->parsed()) {
      auto inst = unif::ProgressionInstance::make(N, q);
      unif::Signal F =
          unif::dual_function(unif::load_signal(f0_path), unif::load_signal(f1_path), inst);
      emit_json(unif::signal_to_json(F), out_path);
    } else if (boxavg->parsed()) {
      auto params = unif::Params::make(N, q);
      auto res = unif::triple_box_average_full(unif::load_signal(in_path), params,
                                               unif::Rational::parse(d2), unif::Rational::parse(d3),
                                               unif::BoxAvgMode::kAuto, seed);
      emit_json(json{{"value", res.value},
                     {"pairs_evaluated", res.pairs_evaluated},
                     {"mode", res.monte_carlo ? "monte_carlo" : "exact"}},
                out_path);
    } else if (bnorm->parsed()) {
      auto params = unif::Params::make(N, q);
      emit_json(json{{"value", unif::b_norm_pow(unif::load_signal(in_path), b_shift, params,
                                                unif::Rational::parse(d1), unif::Rational::parse(d2))}},
                out_path);
    } else if (invertbox->parsed()) {
      unif::FactorPair fp = unif::invert_arithmetic_box(unif::load_signal(in_path), c_dir, d_dir,
                                                        unif::Rational::parse(d2), grid_factor);
      if (!out_path.empty()) {
        unif::save_signal(out_path + ".l.json", fp.l);
        unif::save_signal(out_path + ".r.json", fp.r);
      }
      json j{{"c", fp.c},
             {"d", fp.d},
             {"correlation", fp.correlation},
             {"gamma", fp.gamma},
             {"gamma_prime", fp.gamma_prime},
             {"exceptional_count", fp.exceptional_count}};
      std::cout << j.dump(2) << "\n";
    } else if (concat->parsed()) {
      auto params = unif::Params::make(N, q);
      unif::ConcatReport rep =
          unif::concat_experiment(unif::load_signal(in_path), params, unif::Rational::parse(d1),
                                  unif::Rational::parse(d2), unif::Rational::parse(d3));
      emit_json(json{{"lhs", rep.lhs}, {"rhs", rep.rhs}, {"N", rep.N}, {"q", rep.q}, {"M", rep.M}},
                out_path);
    } else if (degree->parsed()) {
      auto inst = unif::ProgressionInstance::make(N, q);
      unif::DegreeThresholds th;
      th.gamma = gamma;
      th.tmax = tmax;
      unif::DegreeReport rep = unif::degree_lower_report(unif::load_signal(f0_path),
                                                         unif::load_signal(f1_path), inst, u, th);
      json hist = json::array();
      for (const auto& [key, n] : rep.histogram)
        hist.push_back(json{{"a", key[0]}, {"t", key[1]}, {"k", key[2]}, {"count", n}});
      emit_json(json{{"W", rep.W},
                     {"u3_mass", rep.u3_mass},
                     {"u2_mass", rep.u2_mass},
                     {"H_size", rep.H.size()},
                     {"H", rep.H},
                     {"cube_count", rep.cube_count},
                     {"histogram", hist},
                     {"best_fiber", {{"a", rep.best_fiber[0]}, {"t", rep.best_fiber[1]}, {"k", rep.best_fiber[2]}}},
                     {"fiber_size", rep.fiber_size},
                     {"H3", rep.H3},
                     {"fiber_lhs", rep.fiber_lhs}},
                out_path);
    } else if (denom->parsed()) {
      unif::RationalApprox ra = unif::find_denominator(parse_alpha(alpha_str), q, tmax);
      emit_json(json{{"a", ra.a}, {"t", ra.t}, {"k", ra.k}, {"theta", ra.theta}, {"achieved", ra.achieved}},
                out_path);
    } else if (increment->parsed()) {
      auto inst = unif::ProgressionInstance::make(N, q);
      long long nmax = nprime_max > 0 ? nprime_max : inst.M;
      unif::IncrementResult res =
          unif::find_increment(unif::load_set(set_path), inst, qmax, nprime_min, nmax);
      emit_json(json{{"step", step_json(res.step)},
                     {"fourier_peak", {{"beta", res.fourier_peak.beta}, {"correlation", res.fourier_peak.correlation}}},
                     {"denom_hint", {{"a", res.denom_hint.a}, {"t", res.denom_hint.t}}}},
                out_path);
    } else if (iterate->parsed()) {
      unif::IterateParams params;
      params.qprime_max = qmax;
      params.nprime_min = nprime_min;
      params.nprime_max = nprime_max;
      params.max_steps = max_steps;
      unif::IncrementTrace trace = unif::iterate_increment(unif::load_set(set_path), N, q, params);
      emit(unif::trace_csv(trace), out_path);
    } else if (gen->parsed()) {
      std::vector<long long> A;
      if (kind == "greedy-free") {
        A = unif::greedy_free_set(unif::ProgressionInstance::make(N, q));
      } else if (kind == "planted") {
        A = unif::planted_increment_set(N, q, plant_qprime, plant_a, plant_nprime, alpha_in,
                                        alpha_out, seed);
      } else {
        throw std::invalid_argument("unknown --kind: " + kind);
      }
      std::string body;
      for (long long x : A) body += std::to_string(x) + "\n";
      emit(body, out_path);
    } else if (verify->parsed()) {
      unif::ExponentMode mode;
      if (mode_str == "paper") mode = unif::ExponentMode::kPaper;
      else if (mode_str == "derived") mode = unif::ExponentMode::kDerived;
      else throw std::invalid_argument("unknown --mode: " + mode_str);
      unif::VerifyReport rep = unif::run_suite(suite, trials, seed, width, mode);
      json fails = json::array();
      for (const auto& f : rep.failures) fails.push_back(json{{"seed", f.seed}, {"diagnostic", f.diagnostic}});
      emit_json(json{{"suite", rep.suite},
                     {"trials", rep.trials},
                     {"failures", fails},
                     {"stats", rep.stats}},
                out_path);
      if (!rep.failures.empty()) return 1;
    }
  } catch (const unif::FeasibilityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const unif::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
