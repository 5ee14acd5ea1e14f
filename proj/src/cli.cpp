#include "cvlqr/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "cvlqr/io.hpp"
#include "cvlqr/lqr.hpp"
#include "cvlqr/random_instances.hpp"
#include "cvlqr/stabilizability.hpp"
#include "cvlqr/timedelay.hpp"

namespace cvlqr::cli {

namespace fs = std::filesystem;
using io::json;

namespace {

io::RunOptions resolve_options(const json& doc, const Flags& flags) {
  io::RunOptions opts = io::parse_options(doc);
  if (flags.tol) opts.solver.tol = *flags.tol;
  if (flags.max_iter) opts.solver.max_iter = *flags.max_iter;
  if (flags.min_iter) opts.solver.min_iter = *flags.min_iter;
  if (flags.snapshot_at) opts.snapshot_at = *flags.snapshot_at;
  if (opts.snapshot_at) {
    opts.solver.record_iterates = true;
    opts.solver.max_iter = std::max(opts.solver.max_iter, *opts.snapshot_at);
    opts.solver.min_iter = std::max(opts.solver.min_iter, *opts.snapshot_at);
  }
  opts.solver.record_trace = flags.trace;
  try {
    opts.solver.validate();
  } catch (const Error& e) {
    throw io::ParseError("options", e.what());
  }
  return opts;
}

fs::path sidecar(const fs::path& input, const Flags& flags,
                 const std::string& suffix) {
  const fs::path base = flags.output ? *flags.output : input.filename();
  fs::path out = base;
  out.replace_filename(base.stem().string() + suffix);
  return out;
}

void write_document(const json& doc, const Flags& flags, std::ostream& out) {
  if (flags.output) {
    std::ofstream file(*flags.output);
    if (!file) throw io::ParseError("--output", "cannot write file");
    file << doc.dump(2) << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
}

void write_trace(const fs::path& path, const RiccatiSolution& sol) {
  std::ofstream file(path);
  if (!file) throw io::ParseError("--trace", "cannot write " + path.string());
  file << std::setprecision(17) << "iter,residual,step\n";
  for (const TraceRow& row : sol.trace) {
    file << row.iteration << ',' << row.residual << ',' << row.step << '\n';
  }
}

json bimatrix_fields(const HermitianBimatrix& p, const FeedbackGain& gain) {
  return {{"P1", io::to_json(p.p1())},
          {"P2", io::to_json(p.p2())},
          {"K1", io::to_json(gain.k.m1())},
          {"K2", io::to_json(gain.k.m2())}};
}

json solution_summary(const RiccatiSolution& sol) {
  return {{"iterations", sol.iterations}, {"residual", sol.residual}};
}

// Iterate P(k) requested through snapshot_at, with its gain and residual.
json bimatrix_snapshot(const RiccatiSolution& sol, int k,
                       const ComplexLinearSystem& sys, const CostWeights& w) {
  const HermitianBimatrix& p = sol.iterates.at(k);
  const FeedbackGain gain = optimal_gain(sys, w, p);
  json snap = bimatrix_fields(p, gain);
  snap["iteration"] = k;
  snap["residual"] = bimatrix_riccati_residual(p, sys, w);
  return snap;
}

json status_document(const std::string& status, const std::string& message) {
  return {{"status", status}, {"message", message}};
}

// Maps library exceptions onto the exit-code contract.
int guarded(const Flags& flags, std::ostream& out, std::ostream& err,
            const std::function<int()>& body) {
  auto fail = [&](int code, const std::string& status, const std::string& msg) {
    err << "error: " << msg << '\n';
    try {
      write_document(status_document(status, msg), flags, out);
    } catch (const std::exception&) {
    }
    return code;
  };
  try {
    return body();
  } catch (const io::ParseError& e) {
    return fail(kInputError, "input_error", e.what());
  } catch (const DimensionMismatch& e) {
    return fail(kInputError, "input_error", e.what());
  } catch (const InvalidWeights& e) {
    return fail(kInputError, "input_error", e.what());
  } catch (const Diverged& e) {
    return fail(kNotStabilizable, "not_stabilizable", e.what());
  } catch (const NotConvergent& e) {
    return fail(kNoConvergence, "not_convergent", e.what());
  } catch (const Error& e) {
    return fail(kNoConvergence, "numerical_failure", e.what());
  }
}

std::string format_complex(const Complex& z) {
  std::ostringstream os;
  os << std::setprecision(12) << z.real() << (z.imag() < 0 ? "-" : "+")
     << std::abs(z.imag()) << "j";
  return os.str();
}

int report_unstabilizable(const StabilizabilityReport& rep, std::ostream& err,
                          const Flags& flags, std::ostream& out) {
  std::string msg = "system not stabilizable: rank test fails";
  if (rep.offending_eigenvalue) {
    msg += " at eigenvalue " + format_complex(*rep.offending_eigenvalue);
  }
  err << "error: " << msg << '\n';
  write_document(status_document("not_stabilizable", msg), flags, out);
  return kNotStabilizable;
}

json antilinear_method(const std::string& method, const AntilinearSystem& sys,
                       const CostWeights& w, const io::RunOptions& opts,
                       const std::optional<CVector>& x0,
                       RiccatiSolution* trace_out) {
  json doc;
  if (method == "bimatrix") {
    const ComplexLinearSystem lifted = sys.lift();
    const ComplexLqr lqr = lqr_complex(lifted, w, opts.solver);
    doc = bimatrix_fields(lqr.sol.p, lqr.gain);
    doc.update(solution_summary(lqr.sol));
    doc["spectral_radius"] = spectral_radius(closed_loop(lifted, lqr.gain));
    if (x0) doc["jmin"] = lqr.jmin(*x0);
    if (opts.snapshot_at) {
      doc["snapshot"] =
          bimatrix_snapshot(lqr.sol, *opts.snapshot_at, lifted, w);
    }
    if (trace_out) *trace_out = lqr.sol;
    return doc;
  }
  const AntilinearLqr lqr = method == "anti"
                                ? lqr_antilinear_anti(sys, w, opts.solver)
                                : lqr_antilinear_normal(sys, w, opts.solver);
  doc = {{"P", io::to_json(lqr.sol.p.p1())}, {"K1", io::to_json(lqr.k1)}};
  doc.update(solution_summary(lqr.sol));
  doc["spectral_radius"] = spectral_radius(closed_loop(sys.lift(), lqr.gain()));
  if (x0) doc["jmin"] = lqr.jmin(*x0);
  if (opts.snapshot_at) {
    json snap = {{"iteration", *opts.snapshot_at},
                 {"P", io::to_json(lqr.sol.iterates.at(*opts.snapshot_at).p1())}};
    doc["snapshot"] = snap;
  }
  if (trace_out) *trace_out = lqr.sol;
  return doc;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

}  // namespace

int cmd_solve_complex(const fs::path& input, const Flags& flags,
                      std::ostream& out, std::ostream& err) {
  return guarded(flags, out, err, [&] {
    const json doc = io::load_document(input);
    const io::ComplexProblem prob = io::parse_complex_problem(doc);
    const io::RunOptions opts = resolve_options(doc, flags);
    if (flags.precheck) {
      const StabilizabilityReport rep = check_stabilizable_complex(prob.sys);
      if (!rep.stabilizable) return report_unstabilizable(rep, err, flags, out);
    }
    const ComplexLqr lqr = lqr_complex(prob.sys, prob.weights, opts.solver);

    json result = {{"status", "ok"},
                   {"kind", "complex"},
                   {"method", "bimatrix"},
                   {"n", prob.sys.states()},
                   {"m", prob.sys.inputs()}};
    result.update(bimatrix_fields(lqr.sol.p, lqr.gain));
    result.update(solution_summary(lqr.sol));
    result["spectral_radius"] =
        spectral_radius(closed_loop(prob.sys, lqr.gain));
    if (prob.x0) result["jmin"] = lqr.jmin(*prob.x0);
    if (opts.snapshot_at) {
      result["snapshot"] =
          bimatrix_snapshot(lqr.sol, *opts.snapshot_at, prob.sys, prob.weights);
    }
    result["options"] = io::to_json(opts.solver);
    if (flags.trace) {
      write_trace(sidecar(input, flags, "_trace.csv"), lqr.sol);
    }
    write_document(result, flags, out);
    return static_cast<int>(kOk);
  });
}

int cmd_solve_antilinear(const fs::path& input, const Flags& flags,
                         std::ostream& out, std::ostream& err) {
  return guarded(flags, out, err, [&] {
    const json doc = io::load_document(input);
    const io::AntilinearProblem prob = io::parse_antilinear_problem(doc);
    const io::RunOptions opts = resolve_options(doc, flags);
    const std::string& method = flags.method;
    if (method != "bimatrix" && method != "anti" && method != "normal" &&
        method != "all") {
      throw io::ParseError("--method", "unknown method \"" + method + "\"");
    }
    if (flags.precheck) {
      const StabilizabilityReport rep = check_stabilizable_antilinear(prob.sys);
      if (!rep.stabilizable) return report_unstabilizable(rep, err, flags, out);
    }

    json result = {{"status", "ok"},
                   {"kind", "antilinear"},
                   {"method", method},
                   {"n", prob.sys.states()},
                   {"m", prob.sys.inputs()}};
    if (method != "all") {
      RiccatiSolution traced;
      result.update(antilinear_method(method, prob.sys, prob.weights, opts,
                                      prob.x0,
                                      flags.trace ? &traced : nullptr));
      if (flags.trace) {
        write_trace(sidecar(input, flags, "_trace.csv"), traced);
      }
    } else {
      json methods;
      for (const std::string name : {"bimatrix", "anti", "normal"}) {
        RiccatiSolution traced;
        methods[name] = antilinear_method(name, prob.sys, prob.weights, opts,
                                          prob.x0,
                                          flags.trace ? &traced : nullptr);
        if (flags.trace) {
          write_trace(sidecar(input, flags, "_" + name + "_trace.csv"), traced);
        }
      }
      std::vector<CVector> probes;
      if (prob.x0) probes.push_back(*prob.x0);
      SolverOptions plain = opts.solver;
      plain.record_trace = false;
      plain.record_iterates = false;
      const CrossValidationReport rep =
          cross_validate_antilinear(prob.sys, prob.weights, plain, probes);
      result["methods"] = methods;
      result["discrepancies"] = {
          {"P", {{"bimatrix_anti", rep.p_bimatrix_anti},
                 {"bimatrix_normal", rep.p_bimatrix_normal},
                 {"anti_normal", rep.p_anti_normal},
                 {"P2_norm", rep.p2_norm}}},
          {"gain", {{"bimatrix_anti", rep.gain_bimatrix_anti},
                    {"bimatrix_normal", rep.gain_bimatrix_normal},
                    {"anti_normal", rep.gain_anti_normal},
                    {"K2_norm", rep.k2_norm}}},
          {"jmin", {{"bimatrix_anti", rep.jmin_bimatrix_anti},
                    {"bimatrix_normal", rep.jmin_bimatrix_normal},
                    {"anti_normal", rep.jmin_anti_normal}}},
          {"max_relative_P", rep.max_relative_p_discrepancy()},
          {"max_relative_gain", rep.max_relative_gain_discrepancy()}};
      result["iterations"] = {{"bimatrix", rep.bimatrix.sol.iterations},
                              {"anti", rep.anti.sol.iterations},
                              {"normal", rep.normal.sol.iterations}};
    }
    result["options"] = io::to_json(opts.solver);
    write_document(result, flags, out);
    return static_cast<int>(kOk);
  });
}

int cmd_solve_delay(const fs::path& input, const Flags& flags,
                    std::ostream& out, std::ostream& err) {
  return guarded(flags, out, err, [&] {
    const json doc = io::load_document(input);
    const io::DelayProblem prob = io::parse_delay_problem(doc);
    const io::RunOptions opts = resolve_options(doc, flags);
    if (flags.horizon && *flags.horizon < 0) {
      throw io::ParseError("--horizon", "must be nonnegative");
    }
    if (flags.horizon && !prob.initial) {
      throw io::ParseError("initial", "a trajectory needs an initial condition");
    }
    if (flags.precheck) {
      const StabilizabilityReport rep = check_stabilizable_complex(
          prepare_delay_problem(prob.ds).lifted.sys);
      if (!rep.stabilizable) return report_unstabilizable(rep, err, flags, out);
    }
    const DelayLqr lqr = solve_delay_lqr(prob.ds, opts.solver);
    const ComplexLinearSystem& lifted = lqr.lifted.sys;

    json result = {{"status", "ok"},
                   {"kind", "delay"},
                   {"method", "bimatrix"},
                   {"n", prob.ds.states()},
                   {"p", prob.ds.inputs()},
                   {"padded", lqr.padded},
                   {"L0", io::to_json(lqr.l0)},
                   {"F", io::to_json(lqr.feedback.f)}};
    if (lqr.padded) {
      result["notes"] = json::array(
          {"odd input count: appended a zero slack input column with unit "
           "weight; F lists the original inputs only"});
    }
    result.update(bimatrix_fields(lqr.lqr.sol.p, lqr.lqr.gain));
    result.update(solution_summary(lqr.lqr.sol));
    result["spectral_radius"] =
        spectral_radius(closed_loop(lifted, lqr.lqr.gain));
    if (prob.initial) {
      result["x0"] = io::to_json(lift_state(*prob.initial));
      result["jmin"] = lqr.jmin(*prob.initial);
      result["jmin_lifted"] = lqr.jmin_lifted(*prob.initial);
    }
    if (opts.snapshot_at) {
      json snap = bimatrix_snapshot(lqr.lqr.sol, *opts.snapshot_at, lifted,
                                    lqr.lifted.weights);
      const FeedbackGain gain = optimal_gain(
          lifted, lqr.lifted.weights, lqr.lqr.sol.iterates.at(*opts.snapshot_at));
      const RMatrix f = lqr.l0 * realize_gain(gain).f;
      snap["F"] = io::to_json(RMatrix(f.topRows(prob.ds.inputs())));
      result["snapshot"] = snap;
    }
    if (flags.horizon) {
      const DelayTrajectory traj =
          simulate_delay(prob.ds, lqr.feedback, *prob.initial, *flags.horizon);
      result["trajectory_cost"] = traj.cost;
      result["trajectory_horizon"] = *flags.horizon;
      const fs::path path = sidecar(input, flags, "_trajectory.csv");
      std::ofstream file(path);
      if (!file) throw io::ParseError("--horizon", "cannot write " + path.string());
      file << std::setprecision(17) << 'k';
      for (Eigen::Index i = 0; i < prob.ds.states(); ++i) file << ",state_" << i + 1;
      for (Eigen::Index i = 0; i < prob.ds.inputs(); ++i) file << ",input_" << i + 1;
      file << '\n';
      for (std::size_t k = 0; k < traj.states.size(); ++k) {
        file << k;
        for (Eigen::Index i = 0; i < traj.states[k].size(); ++i) {
          file << ',' << traj.states[k](i);
        }
        for (Eigen::Index i = 0; i < prob.ds.inputs(); ++i) {
          file << ',';
          if (k < traj.inputs.size()) file << traj.inputs[k](i);
        }
        file << '\n';
      }
    }
    if (flags.trace) {
      write_trace(sidecar(input, flags, "_trace.csv"), lqr.lqr.sol);
    }
    result["options"] = io::to_json(opts.solver);
    write_document(result, flags, out);
    return static_cast<int>(kOk);
  });
}

int cmd_check_stabilizability(const fs::path& input, std::ostream& out,
                              std::ostream& err) {
  Flags quiet;
  std::ostringstream sink;
  return guarded(quiet, sink, err, [&] {
    const json doc = io::load_document(input);
    const std::string kind = io::document_kind(doc);
    StabilizabilityReport rep;
    if (kind == "complex") {
      rep = check_stabilizable_complex(io::parse_complex_problem(doc).sys);
    } else if (kind == "antilinear") {
      rep = check_stabilizable_antilinear(io::parse_antilinear_problem(doc).sys);
    } else if (kind == "delay") {
      rep = check_stabilizable_complex(
          prepare_delay_problem(io::parse_delay_problem(doc).ds).lifted.sys);
    } else {
      throw io::ParseError("kind", "unknown kind \"" + kind + "\"");
    }
    out << "stabilizable: " << (rep.stabilizable ? "true" : "false") << '\n';
    if (rep.offending_eigenvalue) {
      out << "offending eigenvalue: " << format_complex(*rep.offending_eigenvalue)
          << '\n';
    }
    return static_cast<int>(rep.stabilizable ? kOk : kNotStabilizable);
  });
}

int cmd_bench(const std::optional<fs::path>& input_dir,
              const std::optional<RandomBatch>& batch, const Flags& flags,
              std::ostream& out, std::ostream& err) {
  Flags quiet;
  std::ostringstream sink;
  return guarded(quiet, sink, err, [&] {
    struct Instance {
      std::string name;
      std::optional<io::AntilinearProblem> problem;
      std::string load_error;
      SolverOptions opts;
    };
    std::vector<Instance> instances;
    SolverOptions base;
    if (flags.tol) base.tol = *flags.tol;
    if (flags.max_iter) base.max_iter = *flags.max_iter;
    base.validate();

    if (batch) {
      if (batch->n < 1 || batch->m < 1 || batch->count < 0) {
        throw io::ParseError("--random", "n, m must be positive, count >= 0");
      }
      InstanceGenerator gen(batch->seed);
      for (int i = 0; i < batch->count; ++i) {
        AntilinearSystem sys = gen.antilinear_system(batch->n, batch->m);
        CostWeights w = gen.weights(batch->n, batch->m);
        instances.push_back({"random_" + std::to_string(i),
                             io::AntilinearProblem{sys, w, std::nullopt}, "",
                             base});
      }
    } else if (input_dir) {
      if (!fs::is_directory(*input_dir)) {
        throw io::ParseError("input_dir", input_dir->string() +
                                              " is not a directory");
      }
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(*input_dir)) {
        if (entry.path().extension() == ".json") files.push_back(entry.path());
      }
      std::sort(files.begin(), files.end());
      for (const fs::path& f : files) {
        Instance inst{f.filename().string(), std::nullopt, "", base};
        try {
          const json doc = io::load_document(f);
          if (io::document_kind(doc) != "antilinear") continue;
          inst.problem = io::parse_antilinear_problem(doc);
          SolverOptions o = io::parse_options(doc).solver;
          if (flags.tol) o.tol = *flags.tol;
          if (flags.max_iter) o.max_iter = *flags.max_iter;
          inst.opts = o;
        } catch (const Error& e) {
          inst.load_error = e.what();
        }
        instances.push_back(std::move(inst));
      }
    } else {
      throw io::ParseError("bench", "give an input directory or --random");
    }

    std::ostream* sink_out = &out;
    std::ofstream file;
    if (flags.output) {
      file.open(*flags.output);
      if (!file) throw io::ParseError("--output", "cannot write file");
      sink_out = &file;
    }
    std::ostream& csv = *sink_out;
    csv << std::setprecision(17)
        << "instance,n,m,status,anti_iters,normal_iters,bimatrix_iters,"
           "anti_residual,normal_residual,bimatrix_residual,wall_ms\n";
    int compared = 0;
    int normal_not_slower = 0;
    for (const Instance& inst : instances) {
      csv << csv_quote(inst.name) << ',';
      if (!inst.problem) {
        csv << ",," << csv_quote("error: " + inst.load_error) << ",,,,,,,\n";
        continue;
      }
      const AntilinearSystem& sys = inst.problem->sys;
      const CostWeights& w = inst.problem->weights;
      csv << sys.states() << ',' << sys.inputs() << ',';
      if (!is_stabilizable_antilinear(sys)) {
        csv << "skipped: not stabilizable,,,,,,,\n";
        continue;
      }
      const auto start = std::chrono::steady_clock::now();
      try {
        const RiccatiSolution anti = solve_anti_riccati(sys, w, inst.opts);
        const RiccatiSolution normal =
            solve_normal_riccati(build_normal_data(sys, w), inst.opts);
        const RiccatiSolution bim =
            solve_bimatrix_riccati(sys.lift(), w, inst.opts);
        const double ms = std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count();
        ++compared;
        if (normal.iterations <= anti.iterations) ++normal_not_slower;
        csv << "ok," << anti.iterations << ',' << normal.iterations << ','
            << bim.iterations << ',' << anti.residual << ',' << normal.residual
            << ',' << bim.residual << ',' << std::fixed << std::setprecision(3)
            << ms << std::defaultfloat << std::setprecision(17) << '\n';
      } catch (const Error& e) {
        csv << csv_quote(std::string("error: ") + e.what()) << ",,,,,,,\n";
      }
    }
    err << "normal_iters <= anti_iters on " << normal_not_slower << " of "
        << compared << " solved instances\n";
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const fs::path& input, const fs::path& result_path,
               const Flags& flags, std::ostream& out, std::ostream& err) {
  Flags quiet;
  std::ostringstream sink;
  return guarded(quiet, sink, err, [&] {
    const json doc = io::load_document(input);
    const json result = io::load_document(result_path);
    const SolverOptions opts = resolve_options(doc, flags).solver;
    const std::string kind = io::document_kind(doc);
    bool all_ok = true;
    auto report = [&](const std::string& label, double residual, double norm) {
      const double bound = 100.0 * opts.tol * norm;
      const bool ok = residual <= bound;
      all_ok = all_ok && ok;
      out << std::setprecision(6) << label << ": residual " << residual
          << " bound " << bound << (ok ? " ok" : " FAILED") << '\n';
    };
    auto check_bimatrix = [&](const json& node, const ComplexLinearSystem& sys,
                              const CostWeights& w, const std::string& label) {
      const HermitianBimatrix p(io::parse_complex_matrix(node, "P1"),
                                io::parse_complex_matrix(node, "P2"));
      report(label, bimatrix_riccati_residual(p, sys, w), bnorm(p));
    };

    if (kind == "complex") {
      const io::ComplexProblem prob = io::parse_complex_problem(doc);
      check_bimatrix(result, prob.sys, prob.weights, "bimatrix");
    } else if (kind == "delay") {
      const PreparedDelay prep =
          prepare_delay_problem(io::parse_delay_problem(doc).ds);
      check_bimatrix(result, prep.lifted.sys, prep.lifted.weights, "bimatrix");
    } else if (kind == "antilinear") {
      const io::AntilinearProblem prob = io::parse_antilinear_problem(doc);
      auto check_method = [&](const std::string& method, const json& node) {
        if (method == "bimatrix") {
          check_bimatrix(node, prob.sys.lift(), prob.weights, method);
        } else if (method == "anti") {
          const CMatrix p = io::parse_complex_matrix(node, "P");
          report(method, anti_riccati_residual(p, prob.sys, prob.weights),
                 p.norm());
        } else if (method == "normal") {
          const CMatrix p = io::parse_complex_matrix(node, "P");
          report(method,
                 normal_riccati_residual(
                     p, build_normal_data(prob.sys, prob.weights)),
                 p.norm());
        }
      };
      const std::string method = result.value("method", std::string("bimatrix"));
      if (method == "all") {
        for (const auto& [name, node] : result.at("methods").items()) {
          check_method(name, node);
        }
      } else {
        check_method(method, result);
      }
    } else {
      throw io::ParseError("kind", "unknown kind \"" + kind + "\"");
    }
    return static_cast<int>(all_ok ? kOk : kNoConvergence);
  });
}

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"LQR for complex-valued, antilinear and one-step-delay "
               "discrete-time systems"};
  app.require_subcommand(1);

  Flags flags;
  std::string input;
  std::string result_path;
  std::vector<long long> random_args;

  auto solver_flags = [&](CLI::App* sub) {
    sub->add_option("--tol", flags.tol, "relative step tolerance");
    sub->add_option("--max-iter", flags.max_iter, "iteration budget");
    sub->add_option("--min-iter", flags.min_iter,
                    "iterate at least this many steps");
    sub->add_option("--snapshot-at", flags.snapshot_at,
                    "also report the iterate P(k) at this k");
  };
  auto output_flags = [&](CLI::App* sub) {
    sub->add_option("--output", flags.output, "result document path");
    sub->add_flag("--trace", flags.trace, "write a residual trace CSV");
    sub->add_flag("--precheck", flags.precheck,
                  "run the stabilizability rank test first");
  };

  CLI::App* complex = app.add_subcommand("solve-complex",
                                         "bimatrix Riccati LQR");
  complex->add_option("input", input, "problem document")->required();
  solver_flags(complex);
  output_flags(complex);

  CLI::App* anti = app.add_subcommand("solve-antilinear",
                                      "LQR for antilinear systems");
  anti->add_option("input", input, "problem document")->required();
  anti->add_option("--method", flags.method, "bimatrix|anti|normal|all")
      ->check(CLI::IsMember({"bimatrix", "anti", "normal", "all"}));
  solver_flags(anti);
  output_flags(anti);

  CLI::App* delay = app.add_subcommand("solve-delay",
                                       "LQR for one-step state-delay systems");
  delay->add_option("input", input, "problem document")->required();
  delay->add_option("--horizon", flags.horizon,
                    "write a closed-loop trajectory CSV of this length");
  solver_flags(delay);
  output_flags(delay);

  CLI::App* check = app.add_subcommand("check-stabilizability",
                                       "rank test for stabilizability");
  check->add_option("input", input, "problem document")->required();

  CLI::App* bench = app.add_subcommand(
      "bench", "compare anti-Riccati and normal Riccati iteration counts");
  bench->add_option("input_dir", input, "directory of antilinear documents");
  bench->add_option("--random", random_args, "n m count seed")->expected(4);
  bench->add_option("--tol", flags.tol, "relative step tolerance");
  bench->add_option("--max-iter", flags.max_iter, "iteration budget");
  bench->add_option("--output", flags.output, "CSV path");

  CLI::App* verify = app.add_subcommand(
      "verify", "re-check a result document against its input");
  verify->add_option("input", input, "problem document")->required();
  verify->add_option("result", result_path, "result document")->required();
  verify->add_option("--tol", flags.tol, "relative step tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  if (*complex) return cmd_solve_complex(input, flags, out, err);
  if (*anti) return cmd_solve_antilinear(input, flags, out, err);
  if (*delay) return cmd_solve_delay(input, flags, out, err);
  if (*check) return cmd_check_stabilizability(input, out, err);
  if (*verify) return cmd_verify(input, result_path, flags, out, err);
  if (*bench) {
    std::optional<RandomBatch> batch;
    if (!random_args.empty()) {
      batch = RandomBatch{static_cast<int>(random_args[0]),
                          static_cast<int>(random_args[1]),
                          static_cast<int>(random_args[2]),
                          static_cast<std::uint64_t>(random_args[3])};
    }
    std::optional<fs::path> dir;
    if (!input.empty()) dir = input;
    if (!batch && !dir) {
      err << "error: bench needs an input directory or --random n m count seed\n";
      return kInputError;
    }
    return cmd_bench(dir, batch, flags, out, err);
  }
  return kUsage;
}

}  // namespace cvlqr::cli
