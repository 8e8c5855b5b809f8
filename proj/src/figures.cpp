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

#include "qchaos/figures.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "qchaos/basin.hpp"
#include "qchaos/error.hpp"
#include "qchaos/fractal.hpp"
#include "qchaos/io.hpp"
#include "qchaos/julia.hpp"
#include "qchaos/stability.hpp"

namespace qchaos::figures {

namespace {

using json = nlohmann::ordered_json;
using Writer = std::function<void(std::ostream &)>;

class Sink {
 public:
  explicit Sink(const FigureOptions &o) : dir_(o.out_dir) { std::filesystem::create_directories(dir_); }

  void write(const std::string &name, const Writer &fn) {
    const std::string path = (std::filesystem::path(dir_) / name).string();
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorCode::kInvalidArgument, "cannot write '" + path + "'");
    fn(f);
    files_.push_back(path);
  }

  std::vector<std::string> files() const { return files_; }

 private:
  std::string dir_;
  std::vector<std::string> files_;
};

ErrorAngle deg(double d) { return ErrorAngle::from_degrees(d); }

std::string f2s(double x) { return io::format_double(x); }

void render_to(Sink &sink, const std::string &name, const Surface &s, ErrorAngle e, int res) {
  const Viewport vp = s.kind == Surface::Kind::kInvariantPlane ? Viewport{-1, 1, -1, 1}
                                                               : Viewport{-2, 2, -2, 2};
  const ClassificationGrid g = render(s, vp, res, res, e);
  sink.write(name + ".ppm", [&](std::ostream &o) { io::write_ppm(o, g); });
  if (!g.attractors.detected_long_cycles.empty()) {
    sink.write(name + "_long_cycles.csv", [&](std::ostream &o) {
      o << "cycle,u,v,w\n";
      int k = 0;
      for (const auto &c : g.attractors.detected_long_cycles) {
        for (const auto &p : c.orbit) o << k << ',' << f2s(p.u) << ',' << f2s(p.v) << ',' << f2s(p.w) << '\n';
        ++k;
      }
    });
  }
}

// Quasi-Julia points from C3 that lie on the purity-P sphere (within 2e-3),
// in stereographic coordinates of that sphere.
void quasi_julia_overlay(Sink &sink, const std::string &name, ErrorAngle e, double P) {
  const auto c3 = mixed_repelling_fixed_point(e);
  if (!c3) return;
  BackwardOptions bo;
  bo.walks = 64;
  const auto cloud = quasi_julia_cloud(c3->location, e, 20000, BranchMode::kRandomBranch, 1, bo);
  sink.write(name + "_quasi_julia.csv", [&](std::ostream &o) {
    o << "x,y,u,v,w\n";
    const double R = std::sqrt(2.0 * P - 1.0);
    for (const auto &p : cloud.points) {
      if (std::abs(p.norm() - R) > 2e-3 || p.w + R <= 0.0) continue;
      const double den = R + p.w;
      o << f2s(p.u / den) << ',' << f2s(p.v / den) << ',' << f2s(p.u) << ',' << f2s(p.v) << ','
        << f2s(p.w) << '\n';
    }
  });
}

void scan_figure(Sink &sink, const std::string &id, double eps_deg, int res) {
  ScanParams sp;
  sp.resolution = res;
  const auto curve = dimension_vs_purity(deg(eps_deg), purity_grid(0.6, 1.0, 0.0125), sp);
  sink.write("fig" + id + "_curve.csv", [&](std::ostream &o) { io::write_curve_csv(o, curve); });
  json j;
  j["eps_deg"] = eps_deg;
  try {
    j["p_c"] = critical_purity(deg(eps_deg)).p_c;
  } catch (const Error &) {
    j["p_c"] = nullptr;
  }
  try {
    const auto est = estimate_critical_purity_from_scan(curve);
    j["p_c_est"] = est.p_c_est;
    j["uncertainty"] = est.uncertainty;
    j["plateau"] = est.plateau;
  } catch (const Error &x) {
    j["p_c_est"] = nullptr;
    j["reason"] = std::string(to_string(x.code()));
  }
  sink.write("fig" + id + "_estimate.json", [&](std::ostream &o) { o << j.dump(2) << '\n'; });
}

using Pipeline = std::function<void(Sink &, const FigureOptions &)>;

const std::map<std::string, Pipeline> &pipelines() {
  static const std::map<std::string, Pipeline> table = [] {
    std::map<std::string, Pipeline> t;
    const std::pair<const char *, double> sphere_zero[] = {{"2a", 1.0}, {"2b", 0.95}, {"2c", 0.75}};
    for (const auto &[id, P] : sphere_zero) {
      const std::string name = id;
      const double purity = P;
      t[name] = [name, purity](Sink &s, const FigureOptions &o) {
        render_to(s, "fig" + name, Surface::sphere(purity), ErrorAngle(), o.resolution);
        if (purity < 1.0) quasi_julia_overlay(s, "fig" + name, ErrorAngle(), purity);
      };
    }
    t["2d"] = [](Sink &s, const FigureOptions &o) {
      render_to(s, "fig2d", Surface::plane(), ErrorAngle(), o.resolution);
    };
    const std::pair<const char *, double> plane_small[] = {
        {"4a", 1.8}, {"4b", 4.5}, {"4c", -1.8}, {"4d", -4.5}};
    for (const auto &[id, e] : plane_small) {
      const std::string name = id;
      const double ed = e;
      t[name] = [name, ed](Sink &s, const FigureOptions &o) {
        render_to(s, "fig" + name, Surface::plane(), deg(ed), o.resolution);
        const auto cp = critical_purity(deg(ed));
        json j{{"eps_deg", ed}, {"p3", cp.p3}, {"p_c", cp.p_c},
               {"argmin_point", {cp.argmin.u, cp.argmin.v, cp.argmin.w}}};
        s.write("fig" + name + "_critical_purity.json", [&](std::ostream &os) { os << j.dump(2) << '\n'; });
      };
    }
    t["5"] = [](Sink &s, const FigureOptions &) {
      for (double e : {0.0, 4.5, -4.5}) {
        const auto cloud = julia_cloud(deg(e), 50000, BranchMode::kRandomBranch, 1);
        s.write("fig5_julia_eps" + f2s(e) + ".csv", [&](std::ostream &o) { io::write_points_csv(o, cloud); });
      }
    };
    t["6"] = [](Sink &s, const FigureOptions &o) {
      s.write("fig6_dimension_vs_eps.csv", [&](std::ostream &os) {
        os << "eps_deg,d,stderr,fit_r2\n";
        ScanParams sp;
        sp.resolution = o.resolution;
        for (int k = -10; k <= 10; ++k) {
          const double e = 0.5 * k;
          const auto pt = dimension_vs_purity(deg(e), {1.0}, sp).front();
          os << f2s(e) << ',';
          if (pt.estimate) {
            os << f2s(pt.estimate->d) << ',' << f2s(pt.estimate->standard_error) << ','
               << f2s(pt.estimate->fit_r2);
          } else {
            os << ",,";
          }
          os << '\n';
        }
      });
    };
    const std::pair<const char *, double> sphere_small[] = {
        {"7a", 1.8}, {"7b", 4.5}, {"7c", -1.8}, {"7d", -4.5}};
    for (const auto &[id, e] : sphere_small) {
      const std::string name = id;
      const double ed = e;
      t[name] = [name, ed](Sink &s, const FigureOptions &o) {
        render_to(s, "fig" + name, Surface::sphere(0.95), deg(ed), o.resolution);
        quasi_julia_overlay(s, "fig" + name, deg(ed), 0.95);
      };
    }
    t["8"] = [](Sink &s, const FigureOptions &o) {
      s.write("fig8_montecarlo.csv", [&](std::ostream &os) {
        os << "eps_pct,eps_deg,delta,delta_with_parity,purified_pct,radius\n";
        MonteCarloParams mp;
        mp.n = o.mc_samples;
        for (int pct = -10; pct <= 10; ++pct) {
          const auto r = monte_carlo_divergence(ErrorAngle::from_percent(pct), mp);
          os << pct << ',' << f2s(r.epsilon.degrees()) << ',' << f2s(r.delta) << ','
             << f2s(r.delta_with_parity) << ',' << f2s(r.purified_pct) << ',' << f2s(r.radius) << '\n';
        }
      });
    };
    const std::pair<const char *, double> scans[] = {
        {"9a", 0.0}, {"9b", 0.9}, {"9c", 4.5}, {"9d", -0.9}, {"9e", -4.5}};
    for (const auto &[id, e] : scans) {
      const std::string name = id;
      const double ed = e;
      t[name] = [name, ed](Sink &s, const FigureOptions &o) { scan_figure(s, name, ed, o.resolution); };
    }
    t["10"] = [](Sink &s, const FigureOptions &) {
      s.write("fig10_critical_purity.csv", [&](std::ostream &os) {
        os << "eps_deg,p3,p_c\n";
        for (int k = -20; k <= 20; ++k) {
          const double e = 0.45 * k;
          const auto cp = critical_purity(deg(e));
          os << f2s(e) << ',' << f2s(cp.p3) << ',' << f2s(cp.p_c) << '\n';
        }
      });
    };
    t["11"] = [](Sink &s, const FigureOptions &) {
      s.write("fig11_c3.csv", [&](std::ostream &os) {
        os << "eps_deg,u,w,purity,multiplier\n";
        for (int k = -100; k <= 95; ++k) {
          const double e = 0.1 * k;
          const auto c3 = mixed_repelling_fixed_point(deg(e));
          if (!c3) continue;
          os << f2s(e) << ',' << f2s(c3->location.u) << ',' << f2s(c3->location.w) << ','
             << f2s(c3->purity) << ',' << f2s(c3->multiplier) << '\n';
        }
      });
    };
    t["12"] = [](Sink &s, const FigureOptions &) {
      s.write("fig12_c0_multiplier.csv", [&](std::ostream &os) {
        os << "eps_deg,multiplier\n";
        for (int k = -90; k <= 90; ++k) os << k << ',' << f2s(c0_multiplier(deg(k))) << '\n';
      });
    };
    const std::pair<const char *, double> large[] = {{"a", 27.0}, {"b", 45.0}, {"c", -27.0}, {"d", -45.0}};
    for (const auto &[suffix, e] : large) {
      const double ed = e;
      const std::string plane = std::string("13") + suffix;
      const std::string sphere = std::string("14") + suffix;
      t[plane] = [plane, ed](Sink &s, const FigureOptions &o) {
        render_to(s, "fig" + plane, Surface::plane(), deg(ed), o.resolution);
      };
      t[sphere] = [sphere, ed](Sink &s, const FigureOptions &o) {
        render_to(s, "fig" + sphere, Surface::sphere(1.0), deg(ed), o.resolution);
      };
    }
    return t;
  }();
  return table;
}

}  // namespace

std::vector<std::string> known_ids() {
  std::vector<std::string> ids;
  for (const auto &[k, v] : pipelines()) ids.push_back(k);
  return ids;
}

std::vector<std::string> reproduce(const std::string &id, const FigureOptions &opts) {
  const auto &t = pipelines();
  const auto it = t.find(id);
  if (it == t.end()) throw Error(ErrorCode::kInvalidArgument, "unknown figure id '" + id + "'");
  if (opts.resolution < 8) throw Error(ErrorCode::kInvalidArgument, "resolution too small");
  Sink sink(opts);
  it->second(sink, opts);
  return sink.files();
}

}  // namespace qchaos::figures
