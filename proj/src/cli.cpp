// Copyright 2026 The qchaos Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qchaos/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "qchaos/basin.hpp"
#include "qchaos/circuit_oracle.hpp"
#include "qchaos/error.hpp"
#include "qchaos/figures.hpp"
#include "qchaos/fractal.hpp"
#include "qchaos/io.hpp"
#include "qchaos/julia.hpp"
#include "qchaos/parallel.hpp"
#include "qchaos/rng.hpp"
#include "qchaos/stability.hpp"

#ifndef QCHAOS_VERSION
#define QCHAOS_VERSION "0.0.0"
#endif

namespace qchaos::cli {

using json = nlohmann::ordered_json;

const char *version() { return QCHAOS_VERSION; }

namespace {

// Raised for malformed option values that CLI11 cannot check on its own.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string eps = "0";
  std::string unit = "deg";
  int threads = 0;
  std::string out;
  std::string sidecar;
};

AngleUnit parse_unit(const std::string &u) {
  if (u == "deg") return AngleUnit::kDegrees;
  if (u == "pct") return AngleUnit::kPercent;
  if (u == "rad") return AngleUnit::kRadians;
  throw UsageError("unknown unit '" + u + "' (expected deg, pct or rad)");
}

double parse_number(const std::string &s, const std::string &what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (...) {
    throw UsageError("cannot parse " + what + " '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw UsageError("cannot parse " + what + " '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string &s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

/// "a" or "a:b:step", inclusive of b.
std::vector<double> parse_range(const std::string &s, const std::string &what) {
  const auto parts = split(s, ':');
  if (parts.size() == 1) return {parse_number(parts[0], what)};
  if (parts.size() != 3) throw UsageError(what + " must be a value or from:to:step");
  const double a = parse_number(parts[0], what), b = parse_number(parts[1], what),
               st = parse_number(parts[2], what);
  if (!(st > 0.0) || b < a) throw UsageError(what + " range needs step > 0 and to >= from");
  std::vector<double> v;
  const long n = static_cast<long>(std::floor((b - a) / st + 1e-9));
  for (long k = 0; k <= n; ++k) v.push_back(a + static_cast<double>(k) * st);
  return v;
}

std::vector<ErrorAngle> parse_eps(const Common &c) {
  const AngleUnit unit = parse_unit(c.unit);
  std::vector<ErrorAngle> out;
  for (double x : parse_range(c.eps, "--eps")) out.push_back(ErrorAngle::from(x, unit));
  return out;
}

ErrorAngle single_eps(const Common &c) {
  const auto v = parse_eps(c);
  if (v.size() != 1) throw UsageError("this subcommand takes a single --eps value");
  return v[0];
}

BlochVector parse_bloch(const std::string &s) {
  const auto p = split(s, ',');
  if (p.size() != 3) throw UsageError("state must be u,v,w");
  return {parse_number(p[0], "u"), parse_number(p[1], "v"), parse_number(p[2], "w")};
}

Viewport parse_viewport(const std::string &s) {
  const auto p = split(s, ',');
  if (p.size() != 4) throw UsageError("viewport must be xmin,xmax,ymin,ymax");
  return {parse_number(p[0], "viewport"), parse_number(p[1], "viewport"),
          parse_number(p[2], "viewport"), parse_number(p[3], "viewport")};
}

std::pair<int, int> parse_res(const std::string &s) {
  const auto p = split(s, 'x');
  auto as_int = [](const std::string &t) {
    const double v = parse_number(t, "resolution");
    if (v < 1 || v != std::floor(v) || v > 1 << 16) throw UsageError("resolution must be a positive integer");
    return static_cast<int>(v);
  };
  if (p.size() == 1) return {as_int(p[0]), as_int(p[0])};
  if (p.size() == 2) return {as_int(p[0]), as_int(p[1])};
  throw UsageError("resolution must be N or WxH");
}

json eps_json(ErrorAngle e) {
  return json{{"deg", e.degrees()}, {"pct", e.percent()}, {"rad", e.radians()}};
}

json bloch_json(const BlochVector &b) { return json::array({b.u, b.v, b.w}); }

json point_json(const PeriodicPoint &p) {
  json j;
  j["role"] = std::string(to_string(p.role));
  j["period"] = p.period;
  j["location"] = bloch_json(p.location);
  if (p.z) {
    j["z"] = p.z->is_infinite() ? json("inf") : json::array({p.z->value().real(), p.z->value().imag()});
  }
  j["purity"] = p.purity;
  j["multiplier"] = p.multiplier;
  j["stability"] = std::string(to_string(p.stability));
  j["residual"] = p.residual;
  if (p.period > 2) j["orbit_size"] = p.orbit.size();
  return j;
}

json points_json(const std::vector<PeriodicPoint> &v) {
  json a = json::array();
  for (const auto &p : v) a.push_back(point_json(p));
  return a;
}

json inventory_json(const AttractorInventory &inv) {
  json j;
  j["eps"] = eps_json(inv.epsilon);
  j["pure_fixed_points"] = points_json(inv.pure_fixed);
  j["pure_two_cycle"] = points_json(inv.pure_cycles);
  j["pure_attractors"] = points_json(inv.pure_attractors);
  j["mixed_fixed_points"] = points_json(inv.mixed_fixed_points);
  j["c0"] = point_json(inv.c0_stability);
  j["detected_long_cycles"] = points_json(inv.detected_long_cycles);
  return j;
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

/// Writes to `path`, or to `fallback` when the path is empty.
void emit(const std::string &path, const std::string &content, std::ostream &fallback) {
  if (path.empty()) {
    fallback << content;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "' for writing");
  f << content;
}

void emit_stream(const std::string &path, const std::function<void(std::ostream &)> &fn) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot open '" + path + "' for writing");
  fn(f);
}

void write_points_csv_line(std::ostream &o, ErrorAngle e, const PeriodicPoint &p) {
  o << io::format_double(e.degrees()) << ',' << to_string(p.role) << ',' << p.period << ','
    << io::format_double(p.location.u) << ',' << io::format_double(p.location.v) << ','
    << io::format_double(p.location.w) << ',' << io::format_double(p.purity) << ','
    << io::format_double(p.multiplier) << ',' << to_string(p.stability) << '\n';
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Dynamics of the iterated post-selected qubit protocol with a faulty Hadamard gate",
               "qchaos"};
  app.require_subcommand(0, 1);
  app.set_version_flag("--version", std::string(version()));
  std::string replay;
  app.add_option("--replay", replay, "Re-run the command recorded in a sidecar JSON file");

  Common c;
  std::function<void()> action;
  std::string sub_name;

  auto add_common = [&](CLI::App *s, bool with_eps = true) {
    if (with_eps) {
      s->add_option("--eps", c.eps, "Error angle, a value or from:to:step")->capture_default_str();
      s->add_option("--unit", c.unit, "Unit of --eps: deg, pct (of 90 deg) or rad")
          ->check(CLI::IsMember({"deg", "pct", "rad"}))
          ->capture_default_str();
    }
    s->add_option("--threads", c.threads, "Thread cap (falls back to QCHAOS_THREADS)");
    s->add_option("--out", c.out, "Primary output file (stdout when omitted)");
    s->add_option("--sidecar", c.sidecar, "Run record path (default <out>.run.json)");
  };

  // fixed-points ---------------------------------------------------------
  std::string csv_path;
  bool no_long = false;
  auto *fp = app.add_subcommand("fixed-points", "Fixed points, 2-cycles and stability");
  add_common(fp);
  fp->add_option("--csv", csv_path, "Also write a CSV table of every point");
  fp->add_flag("--no-long-cycles", no_long, "Skip the numerical search for long mixed cycles");
  fp->callback([&] {
    action = [&] {
      json arr = json::array();
      std::ostringstream csv;
      csv << "eps_deg,role,period,u,v,w,purity,multiplier,stability\n";
      for (ErrorAngle e : parse_eps(c)) {
        InventoryOptions o;
        o.search_long_cycles = !no_long;
        const AttractorInventory inv = build_inventory(e, o);
        arr.push_back(inventory_json(inv));
        for (const auto *list : {&inv.pure_fixed, &inv.pure_cycles, &inv.mixed_fixed_points,
                                 &inv.detected_long_cycles})
          for (const auto &p : *list) write_points_csv_line(csv, e, p);
      }
      emit(c.out, dump(arr.size() == 1 ? arr[0] : arr), out);
      if (!csv_path.empty()) emit(csv_path, csv.str(), out);
    };
  });

  // cycles ---------------------------------------------------------------
  std::string seed_state;
  CycleSearch cs;
  auto *cy = app.add_subcommand("cycles", "Pure 2-cycle, optionally a numerical cycle search");
  add_common(cy);
  cy->add_option("--seed-state", seed_state, "Start u,v,w for the numerical search");
  cy->add_option("--transient", cs.transient, "Steps discarded before the search")->capture_default_str();
  cy->add_option("--max-iter", cs.max_iter, "Iteration budget")->capture_default_str();
  cy->add_option("--max-period", cs.max_period, "Largest period tried")->capture_default_str();
  cy->add_option("--tol", cs.tol, "Recurrence distance")->capture_default_str();
  cy->callback([&] {
    action = [&] {
      json arr = json::array();
      for (ErrorAngle e : parse_eps(c)) {
        json j;
        j["eps"] = eps_json(e);
        j["pure_two_cycle"] = points_json(pure_two_cycles(e));
        if (!seed_state.empty()) {
          const BlochVector s = parse_bloch(seed_state);
          if (!is_physical(s)) throw UsageError("--seed-state lies outside the Bloch ball");
          j["seed_state"] = bloch_json(s);
          j["detected"] = point_json(detect_long_cycle(s, e, cs));
        }
        arr.push_back(j);
      }
      emit(c.out, dump(arr.size() == 1 ? arr[0] : arr), out);
    };
  });

  // julia ----------------------------------------------------------------
  int depth = 0;
  std::string mode = "random";
  std::uint64_t seed = 1;
  BackwardOptions bo;
  auto *ju = app.add_subcommand("julia", "Julia set of the pure map by backward iteration");
  add_common(ju);
  ju->add_option("--depth", depth, "Tree depth (full) or walk length (random); default 12 / 50000");
  ju->add_option("--mode", mode, "full or random")->check(CLI::IsMember({"full", "random"}))->capture_default_str();
  ju->add_option("--seed", seed, "Branch RNG seed")->capture_default_str();
  ju->add_option("--walks", bo.walks, "Independent random walks")->capture_default_str();
  ju->add_option("--transient", bo.transient, "Walk points dropped at the start")->capture_default_str();
  ju->callback([&] {
    action = [&] {
      const BranchMode m = mode == "full" ? BranchMode::kFullTree : BranchMode::kRandomBranch;
      const int d = depth > 0 ? depth : (m == BranchMode::kFullTree ? 12 : 50000);
      const auto cloud = julia_cloud(single_eps(c), d, m, seed, bo);
      std::ostringstream s;
      io::write_points_csv(s, cloud);
      emit(c.out, s.str(), out);
    };
  });

  // quasi-julia ----------------------------------------------------------
  std::string start;
  auto *qj = app.add_subcommand("quasi-julia", "Backward iteration of the Bloch map (default start C3)");
  add_common(qj);
  qj->add_option("--start", start, "Start u,v,w (default: C3 at this eps)");
  qj->add_option("--depth", depth, "Tree depth (full) or walk length (random); default 12 / 50000");
  qj->add_option("--mode", mode, "full or random")->check(CLI::IsMember({"full", "random"}))->capture_default_str();
  qj->add_option("--seed", seed, "Branch RNG seed")->capture_default_str();
  qj->add_option("--walks", bo.walks, "Independent random walks")->capture_default_str();
  qj->add_option("--transient", bo.transient, "Walk points dropped at the start")->capture_default_str();
  qj->callback([&] {
    action = [&] {
      const ErrorAngle e = single_eps(c);
      BlochVector s;
      if (start.empty()) {
        const auto c3 = mixed_repelling_fixed_point(e);
        if (!c3) throw Error(ErrorCode::kNoC3, "no C3 at this eps; pass --start");
        s = c3->location;
      } else {
        s = parse_bloch(start);
      }
      const BranchMode m = mode == "full" ? BranchMode::kFullTree : BranchMode::kRandomBranch;
      const int d = depth > 0 ? depth : (m == BranchMode::kFullTree ? 12 : 50000);
      const auto cloud = quasi_julia_cloud(s, e, d, m, seed, bo);
      std::ostringstream o;
      io::write_points_csv(o, cloud);
      emit(c.out, o.str(), out);
    };
  });

  // critical-purity ------------------------------------------------------
  int cp_depth = 4;
  auto *cp = app.add_subcommand("critical-purity", "Lowest-purity preimage of C3");
  add_common(cp);
  cp->add_option("--depth", cp_depth, "Preimage tree depth")->capture_default_str();
  cp->callback([&] {
    action = [&] {
      json arr = json::array();
      for (ErrorAngle e : parse_eps(c)) {
        const CriticalPurity r = critical_purity(e, cp_depth);
        json j;
        j["eps"] = eps_json(e);
        j["p3"] = r.p3;
        j["p_c"] = r.p_c;
        j["argmin_point"] = bloch_json(r.argmin);
        j["argmin_depth"] = r.argmin_depth;
        j["c3"] = bloch_json(r.c3);
        j["plane_preimages"] = r.plane_preimages;
        j["off_plane_preimages"] = r.off_plane_preimages;
        j["off_plane_min_purity"] = r.off_plane_argmin ? json(r.off_plane_min) : json(nullptr);
        j["off_plane_argmin"] = r.off_plane_argmin ? bloch_json(*r.off_plane_argmin) : json(nullptr);
        arr.push_back(j);
      }
      emit(c.out, dump(arr.size() == 1 ? arr[0] : arr), out);
    };
  });

  // basin ----------------------------------------------------------------
  std::string surface = "plane", viewport, res = "512", labels_path;
  double purity_p = 1.0;
  ClassifyParams cls;
  auto *ba = app.add_subcommand("basin", "Basin-of-attraction render (PPM) and labels (CSV)");
  add_common(ba);
  ba->add_option("--surface", surface, "plane or sphere")->check(CLI::IsMember({"plane", "sphere"}))->capture_default_str();
  ba->add_option("--purity", purity_p, "Purity of the sphere")->capture_default_str();
  ba->add_option("--viewport", viewport, "xmin,xmax,ymin,ymax (default -1,1,-1,1 plane, -2,2,-2,2 sphere)");
  ba->add_option("--res", res, "N or WxH")->capture_default_str();
  ba->add_option("--labels", labels_path, "Per-pixel CSV");
  ba->add_option("--radius", cls.radius, "Attractor ball radius")->capture_default_str();
  ba->add_option("--max-iter", cls.max_iter, "Iteration cap")->capture_default_str();
  ba->callback([&] {
    action = [&] {
      const ErrorAngle e = single_eps(c);
      const bool sphere = surface == "sphere";
      const Viewport vp = viewport.empty() ? (sphere ? Viewport{-2, 2, -2, 2} : Viewport{-1, 1, -1, 1})
                                           : parse_viewport(viewport);
      const auto [w, h] = parse_res(res);
      const Surface surf = sphere ? Surface::sphere(purity_p) : Surface::plane();
      RenderParams rp;
      rp.classify = cls;
      const ClassificationGrid g = render(surf, vp, w, h, e, rp);
      if (!c.out.empty()) emit_stream(c.out, [&](std::ostream &o) { io::write_ppm(o, g); });
      if (!labels_path.empty()) emit_stream(labels_path, [&](std::ostream &o) { io::write_labels_csv(o, g); });
      std::map<std::string, long> counts;
      for (const auto &l : g.labels) ++counts[std::string(to_string(l.kind))];
      json j;
      j["eps"] = eps_json(e);
      j["surface"] = surface;
      if (sphere) j["purity"] = purity_p;
      j["width"] = w;
      j["height"] = h;
      j["counts"] = counts;
      j["detected_long_cycles"] = points_json(g.attractors.detected_long_cycles);
      out << dump(j);
    };
  });

  // montecarlo -----------------------------------------------------------
  MonteCarloParams mc;
  auto *mo = app.add_subcommand("montecarlo", "Fraction of random states whose attractor changes");
  add_common(mo);
  mo->add_option("--n", mc.n, "Samples")->capture_default_str();
  mo->add_option("--seed", mc.seed, "Sampling seed")->capture_default_str();
  mo->add_option("--radius", mc.radius, "Attractor ball radius (<= 0: automatic)")->capture_default_str();
  mo->add_option("--max-iter", mc.max_iter, "Iteration cap")->capture_default_str();
  mo->callback([&] {
    action = [&] {
      json arr = json::array();
      for (ErrorAngle e : parse_eps(c)) {
        const MonteCarloResult r = monte_carlo_divergence(e, mc);
        json j;
        j["eps"] = eps_json(e);
        j["delta"] = r.delta;
        j["delta_with_parity"] = r.delta_with_parity;
        j["purified_pct"] = r.purified_pct;
        j["purified_pct_reference"] = r.purified_pct_reference;
        j["n"] = r.n;
        j["seed"] = r.seed;
        j["radius"] = r.radius;
        arr.push_back(j);
      }
      emit(c.out, dump(arr.size() == 1 ? arr[0] : arr), out);
    };
  });

  // dimension ------------------------------------------------------------
  std::string sizes_s, mask_path;
  bool include_c0 = false, offsets = false;
  std::string dim_res = "1024";
  auto *di = app.add_subcommand("dimension", "Box-counting dimension of the basin boundary on one sphere");
  add_common(di);
  di->add_option("--purity", purity_p, "Sphere purity")->capture_default_str();
  di->add_option("--res", dim_res, "Raster size N (N x N)")->capture_default_str();
  di->add_option("--viewport", viewport, "xmin,xmax,ymin,ymax (default -2,2,-2,2)");
  di->add_option("--sizes", sizes_s, "Comma-separated box sizes (default 2,4,8,16,32,64)");
  di->add_flag("--include-c0", include_c0, "Count C0 basin interfaces as boundary");
  di->add_flag("--offsets", offsets, "Average counts over four grid offsets");
  di->add_option("--mask", mask_path, "Write the boundary mask as PPM");
  di->add_option("--radius", cls.radius, "Attractor ball radius")->capture_default_str();
  di->add_option("--max-iter", cls.max_iter, "Iteration cap")->capture_default_str();

  // scan -----------------------------------------------------------------
  std::string purities = "0.6:1.0:0.0125";
  std::string scan_res = "512";
  auto *sc = app.add_subcommand("scan", "Dimension against purity and the critical-purity estimate");
  add_common(sc);
  sc->add_option("--purities", purities, "from:to:step or a single value")->capture_default_str();
  sc->add_option("--res", scan_res, "Raster size N (N x N)")->capture_default_str();
  sc->add_option("--sizes", sizes_s, "Comma-separated box sizes (default 2,4,8,16,32,64)");
  sc->add_flag("--include-c0", include_c0, "Count C0 basin interfaces as boundary");
  sc->add_flag("--offsets", offsets, "Average counts over four grid offsets");
  sc->add_option("--radius", cls.radius, "Attractor ball radius")->capture_default_str();
  sc->add_option("--max-iter", cls.max_iter, "Iteration cap")->capture_default_str();

  auto scan_params = [&](const std::string &r) {
    ScanParams sp;
    sp.resolution = parse_res(r).first;
    if (!viewport.empty()) sp.viewport = parse_viewport(viewport);
    sp.classify = cls;
    sp.policy.include_c0 = include_c0;
    sp.offset_average = offsets;
    if (!sizes_s.empty()) {
      sp.box_sizes.clear();
      for (const auto &t : split(sizes_s, ',')) sp.box_sizes.push_back(static_cast<int>(parse_number(t, "box size")));
    }
    return sp;
  };
  auto estimate_json = [](const DimensionEstimate &d) {
    return json{{"d", d.d},           {"stderr", d.standard_error}, {"fit_r2", d.fit_r2},
                {"box_sizes", d.box_sizes}, {"counts", d.counts}};
  };

  di->callback([&] {
    action = [&] {
      const ScanParams sp = scan_params(dim_res);
      json arr = json::array();
      for (ErrorAngle e : parse_eps(c)) {
        RenderParams rp;
        rp.classify = sp.classify;
        const ClassificationGrid g =
            render(Surface::sphere(purity_p), sp.viewport, sp.resolution, sp.resolution, e, rp);
        const BoundaryMask m = extract_boundary(g, sp.policy);
        if (!mask_path.empty()) emit_stream(mask_path, [&](std::ostream &o) { io::write_ppm(o, m); });
        json j = estimate_json(box_count_dimension(m, sp.box_sizes, sp.offset_average));
        j["eps"] = eps_json(e);
        j["purity"] = purity_p;
        j["boundary_pixels"] = m.count();
        arr.push_back(j);
      }
      emit(c.out, dump(arr.size() == 1 ? arr[0] : arr), out);
    };
  });

  sc->callback([&] {
    action = [&] {
      const ErrorAngle e = single_eps(c);
      const ScanParams sp = scan_params(scan_res);
      const std::vector<double> ps = parse_range(purities, "--purities");
      const auto curve = dimension_vs_purity(e, ps, sp);
      std::ostringstream csv;
      io::write_curve_csv(csv, curve);
      emit(c.out, csv.str(), out);
      json j;
      j["eps"] = eps_json(e);
      try {
        const auto est = estimate_critical_purity_from_scan(curve);
        j["p_c_est"] = est.p_c_est;
        j["uncertainty"] = est.uncertainty;
        j["plateau"] = est.plateau;
        j["threshold"] = est.threshold;
      } catch (const Error &x) {
        j["p_c_est"] = nullptr;
        j["reason"] = std::string(to_string(x.code()));
      }
      if (!c.out.empty()) out << dump(j);
    };
  });

  // oracle-check ---------------------------------------------------------
  long oc_n = 1000;
  std::uint64_t oc_seed = 7;
  auto *oc = app.add_subcommand("oracle-check", "Closed-form maps against the two-qubit simulation");
  add_common(oc, false);
  oc->add_option("--n", oc_n, "Random cases")->capture_default_str();
  oc->add_option("--seed", oc_seed, "Seed")->capture_default_str();
  bool oracle_failed = false;
  oc->callback([&] {
    action = [&] {
      if (oc_n < 1) throw UsageError("--n must be positive");
      double e_bloch = 0.0, e_pure = 0.0, e_prod = 0.0, e_p = 0.0;
      for (long k = 0; k < oc_n; ++k) {
        const auto idx = static_cast<std::uint64_t>(k);
        const BlochVector s = sample_ball(oc_seed, idx);
        const auto r = rng::draw(oc_seed, 0x6f7261636c65ULL, idx);
        const ErrorAngle e = ErrorAngle::from_degrees(-50.0 + 100.0 * rng::to_unit(r[0], r[1]));
        const auto rho = oracle::DensityMatrix2x2::from_bloch(s);
        const auto step = oracle::step_via_circuit(rho, e);
        const BlochVector a = step.rho_out.to_bloch(), b = bloch_step(s, e);
        e_bloch = std::max({e_bloch, std::abs(a.u - b.u), std::abs(a.v - b.v), std::abs(a.w - b.w)});
        e_p = std::max(e_p, std::abs(step.p_success - oracle::success_probability(s)));
        e_prod = std::max(e_prod, oracle::max_abs_diff(oracle::hadamard_product_step(rho, e).m, step.rho_out.m));
        // Pure state from the direction of s.
        const double n = s.norm();
        const BlochVector ps = n > 0 ? (1.0 / n) * s : BlochVector{0, 0, 1};
        const ExtendedComplex z = bloch_to_z(ps, 1e-12);
        const auto pout = oracle::step_via_circuit(oracle::DensityMatrix2x2::from_pure(z), e);
        const BlochVector pb = pout.rho_out.to_bloch();
        const ExtendedComplex zc = bloch_to_z((1.0 / pb.norm()) * pb, 1e-9);
        e_pure = std::max(e_pure, chordal_distance(zc, f_eps(z, e)));
      }
      json j;
      j["n"] = oc_n;
      j["seed"] = oc_seed;
      j["max_error"] = std::max({e_bloch, e_p, e_prod});
      j["max_error_bloch"] = e_bloch;
      j["max_error_success_probability"] = e_p;
      j["max_error_elementwise_form"] = e_prod;
      j["max_error_pure_map_chordal"] = e_pure;
      const bool pass = e_bloch < 1e-12 && e_p < 1e-12 && e_prod < 1e-12 && e_pure < 1e-10;
      j["pass"] = pass;
      oracle_failed = !pass;
      emit(c.out, dump(j), out);
    };
  });

  // repro-figure ---------------------------------------------------------
  std::string fig_id;
  figures::FigureOptions fo;
  auto *rf = app.add_subcommand("repro-figure", "Run a pinned figure pipeline");
  add_common(rf, false);
  rf->add_option("--id", fig_id, "Figure id")->required()->check(CLI::IsMember(figures::known_ids()));
  rf->add_option("--out-dir", fo.out_dir, "Output directory")->capture_default_str();
  rf->add_option("--res", fo.resolution, "Raster size for renders")->capture_default_str();
  rf->add_option("--mc-samples", fo.mc_samples, "Samples per Monte Carlo point")->capture_default_str();
  rf->callback([&] {
    action = [&] {
      const auto files = figures::reproduce(fig_id, fo);
      json j;
      j["id"] = fig_id;
      j["files"] = files;
      emit(c.out, dump(j), out);
    };
  });

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::CallForVersion &) {
    out << version() << "\n";
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  if (!replay.empty()) {
    if (!app.get_subcommands().empty()) {
      err << "error: --replay takes no other arguments\n";
      return 2;
    }
    std::ifstream f(replay);
    if (!f) {
      err << "error: cannot read sidecar '" << replay << "'\n";
      return 2;
    }
    std::vector<std::string> recorded;
    try {
      recorded = json::parse(f).at("argv").get<std::vector<std::string>>();
    } catch (const std::exception &e) {
      err << "error: malformed sidecar: " << e.what() << "\n";
      return 2;
    }
    return run(recorded, out, err);
  }

  const auto subs = app.get_subcommands();
  if (subs.empty() || !action) {
    err << "error: a subcommand is required\n\n" << app.help();
    return 2;
  }
  sub_name = subs[0]->get_name();

  try {
    set_thread_count(c.threads);
    action();
  } catch (const UsageError &e) {
    err << "error: " << e.what() << "\n\n" << subs[0]->help();
    return 2;
  } catch (const Error &e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const std::exception &e) {
    err << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }

  // Run record: everything needed to reproduce the outputs byte for byte.
  json side;
  side["software"] = "qchaos";
  side["version"] = version();
  side["subcommand"] = sub_name;
  side["argv"] = args;
  json cfg;
  for (const CLI::Option *o : subs[0]->get_options()) {
    if (o->get_name().empty() || o->get_name() == "--help") continue;
    const auto &res = o->results();
    if (!res.empty()) {
      cfg[o->get_name()] = res.size() == 1 ? json(res[0]) : json(res);
    } else if (!o->get_default_str().empty()) {
      cfg[o->get_name()] = o->get_default_str();
    }
  }
  side["resolved"] = cfg;
  const std::string side_path =
      !c.sidecar.empty() ? c.sidecar : (!c.out.empty() ? c.out + ".run.json" : "qchaos-" + sub_name + ".run.json");
  try {
    emit(side_path, dump(side), out);
  } catch (const Error &e) {
    err << json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return oracle_failed ? 1 : 0;
}

}  // namespace qchaos::cli
