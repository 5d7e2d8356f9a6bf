#include "mmsim/hom.hpp"

#include <cmath>
#include <string>

#include "mmsim/errors.hpp"

namespace mmsim {

namespace {

void require_unit(const char* name, double v) {
  if (!(v >= 0.0 && v <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

int poisson_cutoff(double mean) {
  return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean) + 12.0));
}

RVector poisson_distribution(double mean) {
  const int n_max = poisson_cutoff(mean);
  RVector p(n_max + 1);
  p[0] = std::exp(-mean);
  for (int n = 1; n <= n_max; ++n) p[n] = p[n - 1] * mean / n;
  return p;
}

/// No-click factors at the two outputs without dark counts.
struct NoClick {
  double c = 1.0;
  double d = 1.0;
  double both = 1.0;
};

NoClick interfering(const RVector& a, const RVector& b, double eta) {
  const ModeTransform splitter = beam_splitter(0.5);
  NoClick out{0.0, 0.0, 0.0};
  for (Eigen::Index n = 0; n < a.size(); ++n) {
    if (a[n] == 0.0) continue;
    for (Eigen::Index m = 0; m < b.size(); ++m) {
      if (b[m] == 0.0) continue;
      CMatrix in = CMatrix::Zero(n + 1, m + 1);
      in(n, m) = 1.0;
      const CMatrix psi = splitter.apply_two_mode(in);
      double c = 0.0, d = 0.0, both = 0.0;
      for (Eigen::Index i = 0; i < psi.rows(); ++i) {
        for (Eigen::Index j = 0; j < psi.cols(); ++j) {
          const double p = std::norm(psi(i, j));
          if (p == 0.0) continue;
          const double wc = std::pow(1.0 - eta, static_cast<double>(i));
          const double wd = std::pow(1.0 - eta, static_cast<double>(j));
          c += p * wc;
          d += p * wd;
          both += p * wc * wd;
        }
      }
      const double w = a[n] * b[m];
      out.c += w * c;
      out.d += w * d;
      out.both += w * both;
    }
  }
  return out;
}

NoClick distinguishable(const RVector& r, double eta) {
  NoClick out{0.0, 0.0, 0.0};
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    const double kk = static_cast<double>(k);
    out.c += r[k] * std::pow(1.0 - 0.5 * eta, kk);
    out.both += r[k] * std::pow(1.0 - eta, kk);
  }
  out.d = out.c;
  return out;
}

// Integral over [0, h] by composite Simpson; both profiles are even so the window integral doubles.
template <class F>
double simpson(F f, double h, int intervals = 4000) {
  const double dx = h / intervals;
  double s = f(0.0) + f(h);
  for (int i = 1; i < intervals; ++i) s += f(i * dx) * (i % 2 ? 4.0 : 2.0);
  return s * dx / 3.0;
}

}  // namespace

void HomParams::validate() const {
  if (!(csp_mean >= 0.0)) throw ValidationError("CSP mean photon number must be >= 0");
  if (!(pair_probability >= 0.0 && pair_probability < 1.0)) {
    throw ValidationError("pair probability must lie in [0, 1)");
  }
  require_unit("heralding efficiency", heralding_efficiency);
  require_unit("idler efficiency", idler_efficiency);
  require_unit("overlap", overlap);
}

RVector heralded_signal_distribution(const HomParams& params, int n_max) {
  params.validate();
  const double x = params.pair_probability;
  RVector pairs(n_max + 1);
  double total = 0.0;
  for (int n = 0; n <= n_max; ++n) {
    pairs[n] = (1.0 - x) * std::pow(x, n) * (1.0 - std::pow(1.0 - params.idler_efficiency, n));
    total += pairs[n];
  }
  if (total <= 0.0) throw UndefinedInputError("heralding probability is zero");
  pairs /= total;
  const double eta = params.heralding_efficiency;
  RVector out = RVector::Zero(n_max + 1);
  for (int n = 0; n <= n_max; ++n) {
    for (int k = 0; k <= n; ++k) {
      out[k] += pairs[n] * std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) -
                                    std::lgamma(n - k + 1.0)) *
                std::pow(eta, k) * std::pow(1.0 - eta, n - k);
    }
  }
  return out;
}

double coincidence_probability(const RVector& a, const RVector& b_matched,
                               const RVector& b_unmatched, const ClickDetector& detector) {
  const double eta = detector.efficiency();
  const double keep = 1.0 - detector.dark_count();
  const NoClick i = interfering(a, b_matched, eta);
  const NoClick u = distinguishable(b_unmatched, eta);
  const double nc_c = keep * i.c * u.c;
  const double nc_d = keep * i.d * u.d;
  const double nn = keep * keep * i.both * u.both;
  return 1.0 - nc_c - nc_d + nn;
}

HomRates hom_rates(const RVector& signal, double csp_mean, double overlap,
                   const ClickDetector& detector) {
  require_unit("overlap", overlap);
  if (!(csp_mean >= 0.0)) throw ValidationError("CSP mean photon number must be >= 0");
  RVector vacuum = RVector::Zero(1);
  vacuum[0] = 1.0;
  return {coincidence_probability(signal, poisson_distribution(overlap * csp_mean),
                                  poisson_distribution((1.0 - overlap) * csp_mean), detector),
          coincidence_probability(signal, vacuum, poisson_distribution(csp_mean), detector)};
}

double hom_visibility(const RVector& signal, double csp_mean, double overlap,
                      const ClickDetector& detector) {
  const HomRates r = hom_rates(signal, csp_mean, overlap, detector);
  if (r.perpendicular <= 0.0) throw UndefinedInputError("no coincidences with orthogonal polarization");
  return (r.perpendicular - r.parallel) / r.perpendicular;
}

double hom_visibility(const HomParams& params) {
  params.validate();
  const int n_max = 8;
  return hom_visibility(heralded_signal_distribution(params, n_max), params.csp_mean,
                        params.overlap, params.detector);
}

double overlap_ratio(double v_measured, double v_expected) {
  if (!(v_measured > 0.0 && v_expected > 0.0 && v_expected <= 1.0)) {
    throw ValidationError("visibilities must satisfy 0 < V_m and 0 < V_e <= 1");
  }
  if (v_measured > v_expected) {
    throw ModelInconsistencyError("measured visibility exceeds the expected visibility");
  }
  return v_measured / v_expected;
}

void TemporalProfiles::validate() const {
  if (!(csp_fwhm > 0.0 && coherence_time > 0.0 && window > 0.0)) {
    throw ValidationError("profile widths and window must be > 0");
  }
}

double temporal_overlap(const TemporalProfiles& p) {
  p.validate();
  const double k = 4.0 * std::log(2.0) / (p.csp_fwhm * p.csp_fwhm);
  auto csp = [k](double t) { return std::exp(-k * t * t); };
  auto hsp = [&p](double t) { return std::exp(-t / p.coherence_time); };
  const double h = 0.5 * p.window;
  const double cross = simpson([&](double t) { return std::sqrt(csp(t) * hsp(t)); }, h);
  return cross * cross / (simpson(csp, h) * simpson(hsp, h));
}

std::vector<WindowPoint> overlap_vs_window(const TemporalProfiles& profiles,
                                           const std::vector<double>& windows,
                                           double expected_visibility) {
  require_unit("expected visibility", expected_visibility);
  std::vector<WindowPoint> out;
  out.reserve(windows.size());
  for (double w : windows) {
    TemporalProfiles p = profiles;
    p.window = w;
    const double xi = temporal_overlap(p);
    out.push_back({w, xi, xi * expected_visibility});
  }
  return out;
}

double calibrate_csp_fwhm(const TemporalProfiles& profiles, double target_overlap) {
  if (!(target_overlap > 0.0 && target_overlap < 1.0)) {
    throw ValidationError("target overlap must lie in (0, 1)");
  }
  TemporalProfiles p = profiles;
  auto at = [&p](double fwhm) {
    p.csp_fwhm = fwhm;
    return temporal_overlap(p);
  };
  // The overlap rises with the FWHM up to the best-matched width; search below it.
  double hi = 0.01;
  double best = at(hi);
  for (double f = 0.02; f <= 20.0; f *= 1.05) {
    const double v = at(f);
    if (v < best) break;
    best = v;
    hi = f;
  }
  double lo = 1e-4;
  if (at(lo) > target_overlap || best < target_overlap) {
    throw ValidationError("target overlap not reachable by varying the CSP width");
  }
  while (hi - lo > 1e-9 * hi) {
    const double mid = 0.5 * (lo + hi);
    (at(mid) < target_overlap ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace mmsim
