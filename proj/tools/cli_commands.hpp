#pragma once

// Subcommands of the chpeakon tool. run_cli() is the whole program minus
// argv plumbing, so tests drive it in-process.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli_io.hpp"

namespace chpeakon::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int check_failed = 1;
inline constexpr int validation = 2;
inline constexpr int numerical = 3;
}  // namespace exit_code

struct RunConfig {
  unsigned digits = 61;
  double tol = default_relative_tolerance;
  std::string format;  // empty = subcommand default
  std::string out;
  std::string input = "-";

  std::optional<double> t_start, t_end;
  std::size_t steps = 100;
  bool no_collisions = false;

  double x_min = -10, x_max = 10;
  std::size_t x_steps = 200;
  std::string grid_out;
  std::string summary_out;

  std::optional<double> t;  // sample
  double horizon = 0.5;     // verify
};

inline constexpr unsigned minimum_digits = 20;

namespace detail {

inline std::string read_all(std::istream& is) {
  return std::string(std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>());
}

inline std::string read_input(const RunConfig& cfg, std::istream& in) {
  if (cfg.input == "-") return read_all(in);
  std::ifstream f(cfg.input);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot open input file " + cfg.input);
  return read_all(f);
}

/// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      os_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw Error(ErrorCode::InvalidArgument, "cannot open output file " + path);
      os_ = file_.get();
    }
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

inline bool wants_csv(const RunConfig& cfg, bool csv_by_default) {
  if (cfg.format.empty()) return csv_by_default;
  return cfg.format == "csv";
}

inline SpectralData<real> spectrum_of(const ProblemDocument& doc, double tol) {
  if (doc.spectrum) return *doc.spectrum;
  return forward_transform(*doc.peaks, doc.t0, tol);
}

/// t_start + i (t_end - t_start)/steps, plus collision times inside the range.
inline std::vector<real> time_grid(const RunConfig& cfg, const real& t0, const std::vector<real>& collisions) {
  const real a = cfg.t_start ? real(*cfg.t_start) : t0;
  const real b = cfg.t_end ? real(*cfg.t_end) : t0 + 10;
  if (b < a) throw Error(ErrorCode::InvalidArgument, "--t-end precedes --t-start");
  if (cfg.steps == 0 && a != b) throw Error(ErrorCode::InvalidArgument, "--steps must be positive");
  std::vector<real> grid;
  const std::size_t steps = a == b ? 0 : cfg.steps;
  for (std::size_t i = 0; i <= steps; ++i) grid.push_back(steps == 0 ? a : a + (b - a) * i / steps);
  if (!cfg.no_collisions) {
    for (const real& tc : collisions) {
      if (tc < a || tc > b) continue;
      // a grid point sitting on the collision (to roundoff) is replaced by it
      auto close = std::find_if(grid.begin(), grid.end(), [&](const real& g) {
        return abs(g - tc) <= real("1e-30") * std::max(real(1), abs(tc));
      });
      if (close != grid.end())
        *close = tc;
      else
        grid.push_back(tc);
    }
    std::sort(grid.begin(), grid.end());
  }
  return grid;
}

inline std::vector<real> space_grid(const RunConfig& cfg) {
  if (cfg.x_steps == 0 || !(cfg.x_min < cfg.x_max))
    throw Error(ErrorCode::InvalidArgument, "space grid needs x-min < x-max and x-steps > 0");
  std::vector<real> xs;
  const real a(cfg.x_min), b(cfg.x_max);
  for (std::size_t i = 0; i <= cfg.x_steps; ++i) xs.push_back(a + (b - a) * i / cfg.x_steps);
  return xs;
}

inline real max_relative_gap(const std::vector<real>& a, const std::vector<real>& b) {
  if (a.size() != b.size()) return real(std::numeric_limits<double>::infinity());
  real worst = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, abs(a[i] - b[i]) / std::max({real(1), abs(a[i]), abs(b[i])}));
  return worst;
}

struct Frame {
  real t;
  MeasureSnapshot<real> snapshot;
  ConservedQuantities<real> invariants;
};

inline void write_frames(std::ostream& os, const std::vector<Frame>& frames, bool csv, json head) {
  if (csv) {
    CsvWriter w(os);
    w.header({"t", "n", "x_n", "omega_n", "upsilon_n", "I1", "I2"});
    for (const Frame& f : frames) {
      const auto& m = f.snapshot.measure;
      for (std::size_t n = 0; n < m.size(); ++n)
        w.row(f.t, n + 1, m.positions[n], m.omega[n], m.upsilon[n], f.invariants.i1, f.invariants.i2);
    }
    return;
  }
  json arr = json::array();
  for (const Frame& f : frames)
    arr.push_back({{"t", number(f.t)},
                   {"is_collision", f.snapshot.is_collision_time},
                   {"N", f.snapshot.measure.size()},
                   {"peaks", peaks_json(f.snapshot.measure)},
                   {"I1", number(f.invariants.i1)},
                   {"I2", number(f.invariants.i2)}});
  head["frames"] = std::move(arr);
  os << head.dump(2) << '\n';
}

inline void write_u_grid(const std::string& path, const std::vector<Frame>& frames, const std::vector<real>& xs) {
  Sink sink(path, std::cout);
  CsvWriter w(sink.stream());
  w.header({"t", "x", "u"});
  for (const Frame& f : frames) {
    const auto s = evaluate_u(f.snapshot.measure, xs);
    for (std::size_t i = 0; i < xs.size(); ++i) w.row(f.t, xs[i], s.u_values[i]);
  }
}

}  // namespace detail

inline int cmd_spectrum(const RunConfig& cfg, const ProblemDocument& doc, std::ostream& out) {
  if (!doc.peaks) throw Error(ErrorCode::InvalidArgument, "spectrum needs a \"peaks\" document");
  const auto w = doc.peaks->empty() ? RealPolynomial<real>::constant(real(1)) : wronskian(*doc.peaks);
  const auto checked = norming_constants_checked(*doc.peaks, eigenvalues(w), doc.t0, cfg.tol);
  const auto& s = checked.data;
  const auto q = conserved_quantities(s);
  detail::Sink sink(cfg.out, out);
  if (detail::wants_csv(cfg, false)) {
    CsvWriter c(sink.stream());
    c.header({"lambda", "gamma2"});
    for (std::size_t i = 0; i < s.size(); ++i) c.row(s.eigenvalues[i], s.norming[i]);
    return exit_code::ok;
  }
  json j;
  j["t0"] = number(doc.t0);
  j["eigenvalues"] = number_array(s.eigenvalues);
  j["norming"] = number_array(s.norming);
  j["W_coeffs"] = number_array(w.coefficients());
  j["I1"] = number(q.i1);
  j["I2"] = number(q.i2);
  j["cross_check_residual"] = number(checked.max_cross_check_residual);
  sink.stream() << j.dump(2) << '\n';
  return exit_code::ok;
}

inline int cmd_invert(const RunConfig& cfg, const ProblemDocument& doc, std::ostream& out) {
  if (!doc.spectrum) throw Error(ErrorCode::InvalidArgument, "invert needs a \"spectrum\" document");
  const auto snap = reconstruct(*doc.spectrum);
  detail::Sink sink(cfg.out, out);
  if (detail::wants_csv(cfg, false)) {
    CsvWriter c(sink.stream());
    c.header({"x", "omega", "upsilon"});
    const auto& m = snap.measure;
    for (std::size_t n = 0; n < m.size(); ++n) c.row(m.positions[n], m.omega[n], m.upsilon[n]);
    return exit_code::ok;
  }
  json j;
  j["t0"] = number(snap.time);
  j["peaks"] = peaks_json(snap.measure);
  j["is_collision"] = snap.is_collision_time;
  j["N"] = snap.measure.size();
  sink.stream() << j.dump(2) << '\n';
  return exit_code::ok;
}

inline int cmd_evolve(const RunConfig& cfg, const ProblemDocument& doc, std::ostream& out) {
  const auto s = detail::spectrum_of(doc, cfg.tol);
  const auto report = collision_times(s);
  const auto grid = detail::time_grid(cfg, s.base_time, report.times());
  std::vector<detail::Frame> frames;
  for (const real& t : grid) {
    auto snap = solve_at(s, t);
    auto inv = measure_moments(snap.measure);
    frames.push_back({t, std::move(snap), inv});
  }
  json head;
  head["t0"] = number(s.base_time);
  head["collision_times"] = number_array(report.times());
  {
    detail::Sink sink(cfg.out, out);
    detail::write_frames(sink.stream(), frames, detail::wants_csv(cfg, true), head);
  }
  if (!cfg.summary_out.empty()) {
    detail::Sink summary(cfg.summary_out, out);
    json j = head;
    j["window"] = json::array({number(report.window_lo), number(report.window_hi)});
    j["frames"] = frames.size();
    summary.stream() << j.dump(2) << '\n';
  }
  if (!cfg.grid_out.empty()) detail::write_u_grid(cfg.grid_out, frames, detail::space_grid(cfg));
  return exit_code::ok;
}

inline int cmd_sample(const RunConfig& cfg, const ProblemDocument& doc, std::ostream& out) {
  MeasureSnapshot<real> snap;
  const real t = cfg.t ? real(*cfg.t) : doc.t0;
  if (doc.peaks && (!cfg.t || t == doc.t0))
    snap = make_snapshot(*doc.peaks, doc.t0);
  else
    snap = solve_at(detail::spectrum_of(doc, cfg.tol), t);
  const auto xs = detail::space_grid(cfg);
  const auto sample = evaluate_u(snap.measure, xs);
  detail::Sink sink(cfg.out, out);
  if (detail::wants_csv(cfg, true)) {
    CsvWriter c(sink.stream());
    c.header({"x", "u", "ux_left", "ux_right"});
    for (std::size_t i = 0; i < xs.size(); ++i)
      c.row(xs[i], sample.u_values[i], sample.ux_left[i], sample.ux_right[i]);
    return exit_code::ok;
  }
  json atoms = json::array();
  for (const auto& [x, mass] : sample.mu_singular_atoms) atoms.push_back({{"x", number(x)}, {"upsilon", number(mass)}});
  json j;
  j["t"] = number(snap.time);
  j["x"] = number_array(xs);
  j["u"] = number_array(sample.u_values);
  j["ux_left"] = number_array(sample.ux_left);
  j["ux_right"] = number_array(sample.ux_right);
  j["atoms"] = std::move(atoms);
  j["energy"] = number(energy_integral(snap.measure));
  j["mu_total"] = number(mu_total(snap.measure));
  sink.stream() << j.dump(2) << '\n';
  return exit_code::ok;
}

inline int cmd_collisions(const RunConfig& cfg, const ProblemDocument& doc, std::ostream& out) {
  const auto s = detail::spectrum_of(doc, cfg.tol);
  std::optional<std::pair<real, real>> window;
  if (cfg.t_start || cfg.t_end)
    window = std::pair<real, real>{cfg.t_start ? real(*cfg.t_start) : real(-std::numeric_limits<double>::infinity()),
                                   cfg.t_end ? real(*cfg.t_end) : real(std::numeric_limits<double>::infinity())};
  const auto report = collision_times(s, window);
  detail::Sink sink(cfg.out, out);
  if (detail::wants_csv(cfg, false)) {
    CsvWriter c(sink.stream());
    c.header({"t", "k", "tangential", "N"});
    for (const auto& e : report.events) {
      std::string ks;
      for (std::size_t k : e.vanishing_k) ks += (ks.empty() ? "" : ";") + std::to_string(k);
      c.row(e.time, ks, e.tangential, e.snapshot.measure.size());
    }
    return exit_code::ok;
  }
  json arr = json::array();
  for (const auto& e : report.events)
    arr.push_back({{"t", number(e.time)},
                   {"k", e.vanishing_k},
                   {"tangential", e.tangential},
                   {"N", e.snapshot.measure.size()},
                   {"peaks", peaks_json(e.snapshot.measure)}});
  json j;
  j["collisions"] = std::move(arr);
  j["window"] = json::array({number(report.window_lo), number(report.window_hi)});
  sink.stream() << j.dump(2) << '\n';
  return exit_code::ok;
}

namespace detail {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0;
  double tolerance = 0;
  std::string note;
};

/// Runs `measure` and records a pass when its residual is within tolerance;
/// library errors count as failures with the message attached.
inline CheckResult run_check(const std::string& name, double tolerance, const std::function<real()>& measure) {
  CheckResult r{name, false, 0, tolerance, ""};
  try {
    const real residual = measure();
    r.residual = to_double(residual);
    r.passed = residual <= tolerance;
  } catch (const Error& e) {
    r.residual = std::numeric_limits<double>::infinity();
    r.note = e.what();
  }
  return r;
}

inline PeakonState<double> to_double_state(const DiscreteMeasurePair<real>& m, const real& t) {
  PeakonState<double> s;
  for (std::size_t n = 0; n < m.size(); ++n) {
    s.positions.push_back(to_double(m.positions[n]));
    s.heights.push_back(to_double(m.omega[n] / 2));
  }
  s.time = to_double(t);
  return s;
}

}  // namespace detail

inline int cmd_verify(const RunConfig& cfg, const ProblemDocument& doc, std::ostream& out) {
  using detail::CheckResult;
  using detail::max_relative_gap;
  using detail::run_check;
  std::vector<CheckResult> checks;
  const double tol = cfg.tol;

  if (doc.peaks) {
    const auto& m = *doc.peaks;
    checks.push_back(run_check("forward_cross_check", tol, [&] {
      if (m.empty()) return real(0);
      return norming_constants_checked(m, eigenvalues(wronskian(m)), doc.t0, tol).max_cross_check_residual;
    }));
    checks.push_back(run_check("roundtrip_measure", tol, [&] {
      const auto back = reconstruct(forward_transform(m, doc.t0, tol)).measure;
      return std::max({max_relative_gap(back.positions, m.positions), max_relative_gap(back.omega, m.omega),
                       max_relative_gap(back.upsilon, m.upsilon)});
    }));
    checks.push_back(run_check("trace_formulas", tol, [&] {
      const auto q = conserved_quantities(forward_transform(m, doc.t0, tol));
      const auto mm = measure_moments(m);
      return max_relative_gap({q.i1, q.i2}, {mm.i1, mm.i2});
    }));
    checks.push_back(run_check("energy_identity", tol, [&] {
      return max_relative_gap({mu_total(m)}, {measure_moments(m).i2});
    }));
    if (!m.empty() && !m.has_dipoles()) {
      constexpr double ode_tol = 1e-6;
      checks.push_back(run_check("ode_agreement", ode_tol, [&] {
        const auto s = forward_transform(m, doc.t0, tol);
        real horizon(cfg.horizon);
        for (const real& tc : collision_times(s).times())
          if (tc > doc.t0) horizon = std::min(horizon, (tc - doc.t0) * real(0.8));
        std::vector<double> cps;
        for (int i = 1; i <= 5; ++i) cps.push_back(to_double(doc.t0 + horizon * i / 5));
        OdeOptions opt;
        opt.rtol = 1e-12;
        opt.atol = 1e-14;
        const auto start = detail::to_double_state(m, doc.t0);
        const auto traj = integrate(start, cps.back(), opt, cps);
        if (traj.termination != OdeTermination::Completed) return real(1);
        real worst = abs(real(hamiltonian(traj.back()) - hamiltonian(start))) / std::max(1.0, std::abs(hamiltonian(start)));
        for (std::size_t i = 1; i < traj.states.size(); ++i) {
          const auto& st = traj.states[i];
          const auto exact = solve_at(s, real(st.time)).measure;
          std::vector<real> q, w;
          for (std::size_t n = 0; n < st.size(); ++n) {
            q.push_back(real(st.positions[n]));
            w.push_back(real(2 * st.heights[n]));
          }
          worst = std::max({worst, max_relative_gap(q, exact.positions), max_relative_gap(w, exact.omega)});
        }
        return worst;
      }));
    }
  }
  if (doc.spectrum) {
    const auto& s = *doc.spectrum;
    checks.push_back(run_check("roundtrip_spectrum", tol, [&] {
      const auto back = forward_transform(reconstruct(s).measure, s.base_time, tol);
      return std::max(max_relative_gap(back.eigenvalues, s.eigenvalues), max_relative_gap(back.norming, s.norming));
    }));
  }
  if (doc.peaks && doc.spectrum) {
    const auto fwd = [&] { return forward_transform(*doc.peaks, doc.t0, tol); };
    checks.push_back(run_check("spectrum_consistency", tol, [&] {
      return max_relative_gap(fwd().eigenvalues, doc.spectrum->eigenvalues);
    }));
    checks.push_back(run_check("norming_law", tol, [&] {
      return max_relative_gap(fwd().norming, evolve_spectral(*doc.spectrum, doc.t0).norming);
    }));
  }

  bool all = true;
  json arr = json::array();
  for (const auto& c : checks) {
    all = all && c.passed;
    json e{{"name", c.name},
           {"passed", c.passed},
           {"residual", std::isfinite(c.residual) ? json(c.residual) : json(nullptr)},
           {"tolerance", c.tolerance}};
    if (!c.note.empty()) e["note"] = c.note;
    arr.push_back(std::move(e));
  }
  detail::Sink sink(cfg.out, out);
  if (detail::wants_csv(cfg, false)) {
    CsvWriter c(sink.stream());
    c.header({"name", "passed", "residual", "tolerance"});
    for (const auto& r : checks) c.row(r.name, r.passed, r.residual, r.tolerance);
  } else {
    sink.stream() << json{{"passed", all}, {"checks", std::move(arr)}}.dump(2) << '\n';
  }
  return all ? exit_code::ok : exit_code::check_failed;
}

inline int cmd_two_peakon(const RunConfig& cfg, const ProblemDocument& doc, std::ostream& out) {
  TwoPeakonData<real> d;
  if (doc.peaks) {
    const auto& m = *doc.peaks;
    if (m.size() != 2 || m.has_dipoles())
      throw Error(ErrorCode::InvalidArgument, "two-peakon needs exactly two peaks without dipoles");
    d = two_peakon_spectrum(m.omega[0], m.omega[1], m.positions[0], m.positions[1], doc.t0);
  } else {
    const auto& s = *doc.spectrum;
    if (s.size() != 2) throw Error(ErrorCode::InvalidArgument, "two-peakon needs exactly two eigenvalues");
    d = make_two_peakon_data(s.eigenvalues[0], s.eigenvalues[1], s.norming[0], s.norming[1], s.base_time);
  }
  const auto tx = two_peakon_collision_time(d);
  std::vector<real> collisions;
  if (tx) collisions.push_back(*tx);
  std::vector<detail::Frame> frames;
  for (const real& t : detail::time_grid(cfg, d.t0, collisions)) {
    auto snap = two_peakon_state(d, t);
    auto inv = measure_moments(snap.measure);
    frames.push_back({t, std::move(snap), inv});
  }
  json head;
  head["t0"] = number(d.t0);
  head["case"] = d.is_antipeakon() ? "peakon-antipeakon" : "peakon-peakon";
  head["lambda"] = json::array({number(d.lambda1), number(d.lambda2)});
  head["gamma2"] = json::array({number(d.gamma1), number(d.gamma2)});
  head["collision_time"] = tx ? number(*tx) : json(nullptr);
  detail::Sink sink(cfg.out, out);
  detail::write_frames(sink.stream(), frames, detail::wants_csv(cfg, false), head);
  return exit_code::ok;
}

inline void write_error(std::ostream& err, const std::string& code, const std::string& message, int exit) {
  err << json{{"error", code}, {"message", message}, {"exit_code", exit}}.dump() << '\n';
}

/// Parses `args` (without the program name), runs one subcommand, returns the exit code.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Conservative multi-peakon solver via the inverse spectral transform", "chpeakon"};
  app.require_subcommand(1);

  auto common = [&cfg](CLI::App* sub) {
    sub->add_option("input", cfg.input, "Problem document (JSON); '-' reads stdin")->capture_default_str();
    sub->add_option("--digits", cfg.digits, "Working precision in decimal digits")
        ->capture_default_str()
        ->check(CLI::Range(minimum_digits, 100000u));
    sub->add_option("--tol", cfg.tol, "Relative tolerance for internal cross-checks")->capture_default_str();
    sub->add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "Output file (default stdout)");
  };
  auto time_opts = [&cfg](CLI::App* sub) {
    sub->add_option("--t-start", cfg.t_start, "First time of the grid (default t0)");
    sub->add_option("--t-end", cfg.t_end, "Last time of the grid (default t0 + 10)");
    sub->add_option("--steps", cfg.steps, "Number of time intervals")->capture_default_str();
    sub->add_flag("--no-collisions", cfg.no_collisions, "Do not insert collision times into the grid");
  };
  auto space_opts = [&cfg](CLI::App* sub) {
    sub->add_option("--x-min", cfg.x_min, "Left end of the space grid")->capture_default_str();
    sub->add_option("--x-max", cfg.x_max, "Right end of the space grid")->capture_default_str();
    sub->add_option("--x-steps", cfg.x_steps, "Number of space intervals")->capture_default_str();
  };

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues, norming constants and W from a peaks document");
  auto* invert = app.add_subcommand("invert", "Peaks (with dipoles) from a spectrum document");
  auto* evolve = app.add_subcommand("evolve", "Peak trajectory over a time grid");
  auto* sample = app.add_subcommand("sample", "u and u_x on a space grid at one time");
  auto* collisions = app.add_subcommand("collisions", "Every collision time with the dipole state there");
  auto* verify = app.add_subcommand("verify", "Run the invariant checks on a document");
  auto* two = app.add_subcommand("two-peakon", "Closed-form two-peak solution over a time grid");
  for (auto* sub : {spectrum, invert, evolve, sample, collisions, verify, two}) common(sub);
  time_opts(evolve);
  time_opts(two);
  collisions->add_option("--t-start", cfg.t_start, "Report collisions from this time on");
  collisions->add_option("--t-end", cfg.t_end, "Report collisions up to this time");
  space_opts(evolve);
  space_opts(sample);
  evolve->add_option("--grid-out", cfg.grid_out, "Also write u on the space grid as t,x,u CSV");
  evolve->add_option("--summary", cfg.summary_out, "Write a JSON summary with collision times");
  sample->add_option("--t", cfg.t, "Time to sample (default t0)");
  verify->add_option("--horizon", cfg.horizon, "Time span of the ODE cross-check")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return exit_code::ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_code::ok;
  } catch (const CLI::ParseError& e) {
    write_error(err, "UsageError", e.what(), exit_code::validation);
    return exit_code::validation;
  }

  const unsigned bits = static_cast<unsigned>(std::ceil(cfg.digits / 0.30102999566398120));
  PrecisionScope precision(bits);
  try {
    const ProblemDocument doc = parse_document(detail::read_input(cfg, in));
    if (spectrum->parsed()) return cmd_spectrum(cfg, doc, out);
    if (invert->parsed()) return cmd_invert(cfg, doc, out);
    if (evolve->parsed()) return cmd_evolve(cfg, doc, out);
    if (sample->parsed()) return cmd_sample(cfg, doc, out);
    if (collisions->parsed()) return cmd_collisions(cfg, doc, out);
    if (verify->parsed()) return cmd_verify(cfg, doc, out);
    return cmd_two_peakon(cfg, doc, out);
  } catch (const Error& e) {
    const int code = is_validation_error(e.code()) ? exit_code::validation : exit_code::numerical;
    write_error(err, std::string(to_string(e.code())), e.what(), code);
    return code;
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what(), exit_code::numerical);
    return exit_code::numerical;
  }
}

}  // namespace chpeakon::cli
