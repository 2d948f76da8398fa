#include "circtv/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>
#include <ostream>

#include "circtv/angle.hpp"
#include "circtv/io.hpp"
#include "circtv/lifting.hpp"
#include "circtv/solver.hpp"
#include "circtv/synth.hpp"

namespace circtv::cli {

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitIo = 2;

struct Formats {
  std::string in;
  std::string out;
};

struct SolverFlags {
  double lambda0 = kPi;
  int cycles = 4000;
  int p = 1;
  double early_stop = 0.0;
  std::string isa = "auto";
};

struct Job {
  std::string input;
  std::string output;
  std::string truth;
  std::string png;
  Formats formats;
  SolverFlags solver;
  double alpha = 0.0, beta = 0.0;
  double alpha1 = 0.0, alpha2 = 0.0, beta1 = 0.0, beta2 = 0.0, gamma = 0.0;
  bool signal1d = false, surface2d = false;
  std::size_t n = 500, rows = 256, cols = 256;
  std::string unwrapped_out;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::string a, b;
  double epsilon = 1.0;
};

FileFormat resolve_format(const std::string& flag, const std::string& path) {
  if (!flag.empty()) {
    if (auto f = parse_format_name(flag)) return *f;
    throw std::invalid_argument("unknown format '" + flag + "'");
  }
  if (auto f = format_from_extension(path)) return *f;
  throw std::invalid_argument("cannot infer the format of '" + path + "'; pass a format flag");
}

PhaseImage load(const std::string& path, const std::string& format_flag, std::ostream& err) {
  PhaseFile file = read_phase_file(path, resolve_format(format_flag, path));
  if (file.wrapped_on_read > 0) {
    err << "warning: " << path << ": " << file.wrapped_on_read
        << " value(s) outside [-pi, pi) were wrapped\n";
  }
  return std::move(file.data);
}

PhaseSignal as_signal(const PhaseImage& img, const std::string& path) {
  if (img.rows() != 1 && img.cols() != 1) {
    throw std::invalid_argument(path + ": expected 1D data, got " + std::to_string(img.rows()) +
                                " x " + std::to_string(img.cols()));
  }
  return img.to_signal();
}

KernelIsa parse_isa(const std::string& s) {
  if (s == "auto") return KernelIsa::automatic;
  if (s == "scalar") return KernelIsa::scalar;
  if (s == "avx2") return KernelIsa::avx2;
  throw std::invalid_argument("unknown isa '" + s + "'");
}

SolveOptions solve_options(const SolverFlags& s) {
  SolveOptions o;
  o.early_stop_change = s.early_stop;
  o.isa = parse_isa(s.isa);
  return o;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void add_io(CLI::App* app, Job& job, bool needs_out) {
  app->add_option("--in", job.input, "Input file")->required();
  auto* out = app->add_option("--out", job.output, "Output file");
  if (needs_out) out->required();
  app->add_option("--format", job.formats.in, "Input format (csv, mat-text, f64-binary)");
  app->add_option("--out-format", job.formats.out,
                  "Output format (csv, mat-text, f64-binary, png-hue)");
}

void add_solver(CLI::App* app, SolverFlags& s) {
  app->add_option("--lambda0", s.lambda0, "Initial step size")->capture_default_str();
  app->add_option("--cycles", s.cycles, "Number of cycles")->capture_default_str();
  app->add_option("--p", s.p, "Exponent of the regularizer (1 or 2)")->capture_default_str();
  app->add_option("--early-stop", s.early_stop, "Stop once a cycle changes less than this");
  app->add_option("--isa", s.isa, "Kernel variant: auto, scalar, avx2")->capture_default_str();
}

template <class Report>
void report_solve(ordered_json& j, const Report& r) {
  j["cycles"] = r.cycles_run;
  j["final_change"] = r.change_trace.empty() ? 0.0 : r.change_trace.back();
  j["kernel"] = r.kernel;
}

ordered_json run_denoise1d(const Job& job, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const PhaseSignal f = as_signal(load(job.input, job.formats.in, err), job.input);
  Params1D params;
  params.alpha = job.alpha;
  params.beta = job.beta;
  params.lambda0 = job.solver.lambda0;
  params.max_cycles = job.solver.cycles;
  params.p = job.solver.p;
  SolveOptions options = solve_options(job.solver);
  options.record_energy = false;
  const SignalReport r = cppa_denoise_1d(f, params, options);

  ordered_json j;
  j["command"] = "denoise1d";
  j["n"] = f.size();
  if (!job.truth.empty()) {
    const PhaseSignal truth = as_signal(load(job.truth, "", err), job.truth);
    j["cmse"] = cmse(truth, r.result);
  }
  j["energy_input"] = energy_1d(f, f, params);
  j["energy"] = energy_1d(r.result, f, params);
  report_solve(j, r);
  write_phase_file(job.output, PhaseImage::from_signal(r.result),
                   resolve_format(job.formats.out, job.output));
  j["wall_time_s"] = seconds_since(t0);
  return j;
}

ordered_json run_denoise2d(const Job& job, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const PhaseImage f = load(job.input, job.formats.in, err);
  Params2D params;
  params.alpha1 = job.alpha1;
  params.alpha2 = job.alpha2;
  params.beta1 = job.beta1;
  params.beta2 = job.beta2;
  params.gamma = job.gamma;
  params.lambda0 = job.solver.lambda0;
  params.max_cycles = job.solver.cycles;
  params.p = job.solver.p;
  SolveOptions options = solve_options(job.solver);
  options.record_energy = false;
  const ImageReport r = cppa_denoise_2d(f, params, options);

  ordered_json j;
  j["command"] = "denoise2d";
  j["rows"] = f.rows();
  j["cols"] = f.cols();
  if (!job.truth.empty()) j["cmse"] = cmse(load(job.truth, "", err), r.result);
  j["energy_input"] = energy_2d(f, f, params);
  j["energy"] = energy_2d(r.result, f, params);
  report_solve(j, r);
  write_phase_file(job.output, r.result, resolve_format(job.formats.out, job.output));
  if (!job.png.empty()) write_phase_file(job.png, r.result, FileFormat::png_hue);
  j["wall_time_s"] = seconds_since(t0);
  return j;
}

ordered_json run_synth(const Job& job) {
  if (job.signal1d == job.surface2d) {
    throw std::invalid_argument("synth needs exactly one of --signal1d, --surface2d");
  }
  ordered_json j;
  j["command"] = "synth";
  const FileFormat fmt = resolve_format(job.formats.out, job.output);
  if (job.signal1d) {
    const PhaseSignal s = synth_signal_1d(job.n);
    write_phase_file(job.output, PhaseImage::from_signal(s), fmt);
    j["kind"] = "signal1d";
    j["n"] = s.size();
    return j;
  }
  const SyntheticSurface s = synth_surface_2d(job.rows, job.cols);
  write_phase_file(job.output, s.wrapped, fmt);
  if (!job.unwrapped_out.empty()) write_real_grid(job.unwrapped_out, s.unwrapped);
  j["kind"] = "surface2d";
  j["rows"] = job.rows;
  j["cols"] = job.cols;
  return j;
}

ordered_json run_noise(const Job& job, std::ostream& err) {
  const PhaseImage x = load(job.input, job.formats.in, err);
  const PhaseImage noisy = add_wrapped_gaussian(x, NoiseSpec{job.sigma, job.seed});
  write_phase_file(job.output, noisy, resolve_format(job.formats.out, job.output));
  ordered_json j;
  j["command"] = "noise";
  j["sigma"] = job.sigma;
  j["seed"] = job.seed;
  j["cmse"] = cmse(x, noisy);
  return j;
}

ordered_json run_metrics(const Job& job, std::ostream& err) {
  const PhaseImage a = load(job.a, job.formats.in, err);
  const PhaseImage b = load(job.b, job.formats.in, err);
  if (a.size() != b.size()) throw std::invalid_argument("metrics: inputs differ in size");
  // a single row and a single column of equal length compare as signals
  const PhaseImage bb = (a.rows() == b.rows()) ? b : PhaseImage(a.rows(), a.cols(),
                                                                std::vector<double>(
                                                                    b.pixels().begin(),
                                                                    b.pixels().end()));
  ordered_json j;
  j["command"] = "metrics";
  j["cmse"] = cmse(a, bb);
  j["d_inf"] = d_inf_between(a, bb);
  return j;
}

ordered_json run_check(const Job& job, std::ostream& err) {
  const PhaseImage f = load(job.input, job.formats.in, err);
  ConvergenceCheck c;
  if (f.rows() == 1 || f.cols() == 1) {
    Params1D p;
    p.alpha = job.alpha;
    p.beta = job.beta;
    c = check_convergence_conditions(f.to_signal(), p, job.solver.lambda0, job.solver.cycles,
                                     job.epsilon);
  } else {
    Params2D p;
    p.alpha1 = job.alpha1;
    p.alpha2 = job.alpha2;
    p.beta1 = job.beta1;
    p.beta2 = job.beta2;
    p.gamma = job.gamma;
    c = check_convergence_conditions(f, p, job.solver.lambda0, job.solver.cycles, job.epsilon);
  }
  ordered_json j;
  j["command"] = "check";
  j["d_inf_neighbors"] = c.d_inf_f;
  j["tv_budget"] = c.tv_budget;
  j["max_weight"] = c.max_weight;
  j["epsilon"] = c.epsilon;
  j["lambda_l2"] = c.lambda_l2;
  j["lambda_inf"] = c.lambda_inf;
  j["c"] = c.c;
  j["step_bound"] = c.step_bound();
  j["neighbor_condition"] = c.neighbor_condition();
  j["budget_condition"] = c.budget_condition();
  j["step_condition"] = c.step_condition();
  j["all"] = c.all();
  return j;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Denoising of circle-valued signals and images", "circtv"};
  app.require_subcommand(1);
  Job job;

  auto* d1 = app.add_subcommand("denoise1d", "Denoise a 1D phase signal");
  add_io(d1, job, true);
  add_solver(d1, job.solver);
  d1->add_option("--alpha", job.alpha, "First-order weight");
  d1->add_option("--beta", job.beta, "Second-order weight");
  d1->add_option("--truth", job.truth, "Ground truth for the cMSE");

  auto* d2 = app.add_subcommand("denoise2d", "Denoise a phase image");
  add_io(d2, job, true);
  add_solver(d2, job.solver);
  d2->add_option("--alpha1", job.alpha1, "Vertical first-order weight");
  d2->add_option("--alpha2", job.alpha2, "Horizontal first-order weight");
  d2->add_option("--beta1", job.beta1, "Vertical second-order weight");
  d2->add_option("--beta2", job.beta2, "Horizontal second-order weight");
  d2->add_option("--gamma", job.gamma, "Mixed second-order weight");
  d2->add_option("--truth", job.truth, "Ground truth for the cMSE");
  d2->add_option("--png", job.png, "Also export the result as a hue image");

  auto* sy = app.add_subcommand("synth", "Generate synthetic data");
  sy->add_flag("--signal1d", job.signal1d, "Piecewise test signal");
  sy->add_flag("--surface2d", job.surface2d, "Test surface");
  sy->add_option("--n", job.n, "Signal length")->capture_default_str();
  sy->add_option("--rows", job.rows, "Surface rows")->capture_default_str();
  sy->add_option("--cols", job.cols, "Surface columns")->capture_default_str();
  sy->add_option("--out", job.output, "Output file")->required();
  sy->add_option("--out-format", job.formats.out, "Output format");
  sy->add_option("--unwrapped-out", job.unwrapped_out, "Unwrapped surface (mat-text)");

  auto* no = app.add_subcommand("noise", "Add wrapped Gaussian noise");
  add_io(no, job, true);
  no->add_option("--sigma", job.sigma, "Standard deviation")->required();
  no->add_option("--seed", job.seed, "Generator seed")->capture_default_str();

  auto* me = app.add_subcommand("metrics", "Compare two phase files");
  me->add_option("--a", job.a, "First file")->required();
  me->add_option("--b", job.b, "Second file")->required();
  me->add_option("--format", job.formats.in, "Input format");

  auto* ch = app.add_subcommand("check", "Evaluate the convergence conditions for given data");
  ch->add_option("--in", job.input, "Input file")->required();
  ch->add_option("--format", job.formats.in, "Input format");
  ch->add_option("--alpha", job.alpha, "First-order weight (1D)");
  ch->add_option("--beta", job.beta, "Second-order weight (1D)");
  ch->add_option("--alpha1", job.alpha1, "Vertical first-order weight");
  ch->add_option("--alpha2", job.alpha2, "Horizontal first-order weight");
  ch->add_option("--beta1", job.beta1, "Vertical second-order weight");
  ch->add_option("--beta2", job.beta2, "Horizontal second-order weight");
  ch->add_option("--gamma", job.gamma, "Mixed second-order weight");
  ch->add_option("--lambda0", job.solver.lambda0, "Initial step size")->capture_default_str();
  ch->add_option("--cycles", job.solver.cycles, "Number of cycles")->capture_default_str();
  ch->add_option("--epsilon", job.epsilon, "Tolerance in the conditions")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }

  try {
    ordered_json summary;
    if (*d1) summary = run_denoise1d(job, err);
    if (*d2) summary = run_denoise2d(job, err);
    if (*sy) summary = run_synth(job);
    if (*no) summary = run_noise(job, err);
    if (*me) summary = run_metrics(job, err);
    if (*ch) summary = run_check(job, err);
    out << summary.dump() << "\n";
    return kExitOk;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

int run(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace circtv::cli
