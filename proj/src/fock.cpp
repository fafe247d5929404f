#include "salhi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "salhi/parallel.hpp"

namespace salhi {

namespace {

using cd = std::complex<double>;
using State = std::vector<cd>;

// Four-mode truncated Fock space, flattened as ((ms*na + ma)*nv + mv)*nf + mf.
struct Dims {
  int ns, na, nv, nf;
  std::int64_t stride_s, stride_a, stride_v, stride_f;
  std::int64_t total;

  Dims(int ns_, int na_, int nv_, int nf_) : ns(ns_), na(na_), nv(nv_), nf(nf_) {
    stride_f = 1;
    stride_v = nf;
    stride_a = static_cast<std::int64_t>(nv) * nf;
    stride_s = static_cast<std::int64_t>(na) * nv * nf;
    total = static_cast<std::int64_t>(ns) * na * nv * nf;
  }
};

struct SqrtTable {
  std::vector<double> v;
  explicit SqrtTable(int n) : v(static_cast<std::size_t>(n) + 2) {
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::sqrt(static_cast<double>(i));
  }
  double operator()(int n) const { return v[static_cast<std::size_t>(n)]; }
};

enum class PairKind {
  TwoModeSqueeze,  // scale * (a^dag b^dag - a b) on (seed, partner)
  LossCoupling,    // scale * (a^dag v - a v^dag) on (seed, loss ancilla)
  DephaseCoupling  // scale * (a^dag f - a f^dag) on (partner, dephasing ancilla)
};

// out = scale * (generator applied to in); acc += out. Each kernel iterates
// the coupled mode pair in the outer loops and streams the spectator block in
// the inner loop, so both execution modes touch each element exactly once.
void apply_generator(PairKind kind, double scale, const Dims& d, const SqrtTable& sq,
                     const State& in, State& out, State& acc) {
  const cd* src = in.data();
  cd* dst = out.data();
  cd* sum = acc.data();

  switch (kind) {
    case PairKind::TwoModeSqueeze: {
      // Couples (ms, ma); the (mv, mf) block of length stride_a is contiguous.
      parallel_for(static_cast<std::int64_t>(d.ns) * d.na, [&](std::int64_t pair) {
        const int ms = static_cast<int>(pair / d.na);
        const int ma = static_cast<int>(pair % d.na);
        const std::int64_t base = ms * d.stride_s + ma * d.stride_a;
        const double raise =
            (ms >= 1 && ma >= 1) ? scale * sq(ms) * sq(ma) : 0.0;
        const double lower = (ms + 1 < d.ns && ma + 1 < d.na)
                                 ? scale * sq(ms + 1) * sq(ma + 1)
                                 : 0.0;
        const cd* from_raise =
            (raise != 0.0) ? src + (base - d.stride_s - d.stride_a) : nullptr;
        const cd* from_lower =
            (lower != 0.0) ? src + (base + d.stride_s + d.stride_a) : nullptr;
        for (std::int64_t k = 0; k < d.stride_a; ++k) {
          cd v = 0.0;
          if (from_raise) v += raise * from_raise[k];
          if (from_lower) v -= lower * from_lower[k];
          dst[base + k] = v;
          sum[base + k] += v;
        }
      });
      break;
    }
    case PairKind::LossCoupling: {
      // Couples (ms, mv); spectators ma (outer) and mf (contiguous inner).
      parallel_for(static_cast<std::int64_t>(d.ns) * d.nv, [&](std::int64_t pair) {
        const int ms = static_cast<int>(pair / d.nv);
        const int mv = static_cast<int>(pair % d.nv);
        const double raise =
            (ms >= 1 && mv + 1 < d.nv) ? scale * sq(ms) * sq(mv + 1) : 0.0;
        const double lower =
            (ms + 1 < d.ns && mv >= 1) ? scale * sq(ms + 1) * sq(mv) : 0.0;
        const std::int64_t off_raise = -d.stride_s + d.stride_v;
        const std::int64_t off_lower = d.stride_s - d.stride_v;
        for (int ma = 0; ma < d.na; ++ma) {
          const std::int64_t base =
              ms * d.stride_s + ma * d.stride_a + mv * d.stride_v;
          for (int mf = 0; mf < d.nf; ++mf) {
            cd v = 0.0;
            if (raise != 0.0) v += raise * src[base + off_raise + mf];
            if (lower != 0.0) v -= lower * src[base + off_lower + mf];
            dst[base + mf] = v;
            sum[base + mf] += v;
          }
        }
      });
      break;
    }
    case PairKind::DephaseCoupling: {
      // Couples (ma, mf); spectators ms (parallel) and mv.
      parallel_for(d.ns, [&](std::int64_t ms) {
        for (int ma = 0; ma < d.na; ++ma) {
          const double s_raise = (ma >= 1) ? scale * sq(ma) : 0.0;
          const double s_lower = (ma + 1 < d.na) ? scale * sq(ma + 1) : 0.0;
          for (int mv = 0; mv < d.nv; ++mv) {
            const std::int64_t base =
                ms * d.stride_s + ma * d.stride_a + mv * d.stride_v;
            for (int mf = 0; mf < d.nf; ++mf) {
              cd v = 0.0;
              if (s_raise != 0.0 && mf + 1 < d.nf) {
                v += s_raise * sq(mf + 1) * src[base - d.stride_a + mf + 1];
              }
              if (s_lower != 0.0 && mf >= 1) {
                v -= s_lower * sq(mf) * src[base + d.stride_a + mf - 1];
              }
              dst[base + mf] = v;
              sum[base + mf] += v;
            }
          }
        }
      });
      break;
    }
  }
}

// exp(angle * generator) by scaling and a fixed-length Taylor series; each
// substep keeps the effective generator norm at or below 1, where 20 terms
// are far past double precision.
void apply_exp_generator(PairKind kind, double angle, int coupling_dim_a,
                         int coupling_dim_b, const Dims& d, const SqrtTable& sq,
                         State& state, State& term, State& next) {
  if (angle == 0.0) return;
  const double bound = std::abs(angle) *
                       std::sqrt(static_cast<double>(coupling_dim_a) *
                                 static_cast<double>(coupling_dim_b));
  const int substeps = std::max(1, static_cast<int>(std::ceil(bound)));
  const double step = angle / substeps;
  constexpr int kTaylorTerms = 20;

  for (int s = 0; s < substeps; ++s) {
    term = state;
    for (int k = 1; k <= kTaylorTerms; ++k) {
      apply_generator(kind, step / k, d, sq, term, next, state);
      std::swap(term, next);
    }
  }
}

void apply_phase(const Dims& d, double phi, State& state) {
  if (phi == 0.0) return;
  std::vector<cd> photon_phase(static_cast<std::size_t>(d.ns));
  for (int n = 0; n < d.ns; ++n) {
    photon_phase[static_cast<std::size_t>(n)] = std::polar(1.0, phi * n);
  }
  parallel_for(d.ns, [&](std::int64_t ms) {
    const cd factor = photon_phase[static_cast<std::size_t>(ms)];
    const std::int64_t base = ms * d.stride_s;
    for (std::int64_t k = 0; k < d.stride_s; ++k) {
      state[base + k] *= factor;
    }
  });
}

struct SingleModeMoments {
  double norm = 0.0;
  double mean = 0.0;
  double mean_sq = 0.0;
  cd lower_one = 0.0;  // <a>
  cd lower_two = 0.0;  // <a^2>
};

SingleModeMoments mode_moments(const Dims& d, const State& state, int mode) {
  const std::int64_t stride = (mode == 0) ? d.stride_s : d.stride_a;
  const int levels = (mode == 0) ? d.ns : d.na;
  SqrtTable sq(levels);
  SingleModeMoments m;
  for (std::int64_t idx = 0; idx < d.total; ++idx) {
    const int n = static_cast<int>((idx / stride) % levels);
    const double p = std::norm(state[idx]);
    m.norm += p;
    m.mean += n * p;
    m.mean_sq += static_cast<double>(n) * n * p;
    if (n >= 1) {
      m.lower_one += std::conj(state[idx - stride]) * sq(n) * state[idx];
    }
    if (n >= 2) {
      m.lower_two += std::conj(state[idx - 2 * stride]) * sq(n) * sq(n - 1) * state[idx];
    }
  }
  return m;
}

double truncation_tail(const Dims& d, const State& state) {
  double tail = 0.0;
  double norm = 0.0;
  for (std::int64_t idx = 0; idx < d.total; ++idx) {
    const int ms = static_cast<int>(idx / d.stride_s);
    const int ma = static_cast<int>((idx / d.stride_a) % d.na);
    const int mv = static_cast<int>((idx / d.stride_v) % d.nv);
    const int mf = static_cast<int>(idx % d.nf);
    const double p = std::norm(state[idx]);
    norm += p;
    if (ms >= d.ns - 2 || ma >= d.na - 2 || mv >= d.nv - 2 || mf >= d.nf - 2) {
      tail += p;
    }
  }
  return std::max(tail, std::abs(1.0 - norm));
}

int suggest_cutoff(const Dims& d, const State& state, double tail, double tol) {
  // Geometric extrapolation from the top two occupied seed-mode levels.
  std::vector<double> occupancy(static_cast<std::size_t>(d.ns), 0.0);
  for (std::int64_t idx = 0; idx < d.total; ++idx) {
    occupancy[static_cast<std::size_t>(idx / d.stride_s)] += std::norm(state[idx]);
  }
  const double top = occupancy[static_cast<std::size_t>(d.ns - 1)];
  const double below = occupancy[static_cast<std::size_t>(d.ns - 2)];
  if (top > 0.0 && below > top) {
    const double q = top / below;
    const int extra =
        static_cast<int>(std::ceil(std::log(tol / std::max(tail, top)) / std::log(q)));
    return std::min(d.ns + std::max(extra, 2), 3 * d.ns);
  }
  return d.ns + d.ns / 2;
}

}  // namespace

FockReport fock_oracle(const InterferometerConfig& cfg, OutputChannel channel,
                       const FockOptions& options) {
  constexpr double kSlack = 1e-12;
  if (cfg.stage1.r > 0.5 + kSlack || cfg.stage2.r > 0.5 + kSlack) {
    throw std::domain_error("fock_oracle: valid only for squeeze arguments r <= 0.5");
  }
  if (cfg.seed.mean_photon_number > 1.0 + kSlack) {
    throw std::domain_error("fock_oracle: valid only for |alpha| <= 1");
  }
  const int n_sys = options.n_system;
  const int n_anc = (options.n_ancilla > 0) ? options.n_ancilla : options.n_system;
  if (n_sys < 4 || n_anc < 4) {
    throw std::domain_error("fock_oracle: cutoffs must be at least 4");
  }

  const Dims d(n_sys, n_sys, n_anc, n_anc);
  const SqrtTable sq(std::max(n_sys, n_anc));
  State state(static_cast<std::size_t>(d.total), cd{0.0, 0.0});
  State term(state.size());
  State next(state.size());

  // Coherent amplitude on the seeded mode, vacuum elsewhere.
  const cd alpha =
      std::polar(std::sqrt(cfg.seed.mean_photon_number), cfg.seed.alpha_phase);
  cd amp = std::exp(-0.5 * cfg.seed.mean_photon_number);
  const std::int64_t seed_stride =
      (cfg.seed.kind == SeedKind::Optical) ? d.stride_s : d.stride_a;
  for (int n = 0; n < n_sys; ++n) {
    state[static_cast<std::size_t>(n * seed_stride)] = amp;
    amp *= alpha / sq(n + 1);
  }

  apply_exp_generator(PairKind::TwoModeSqueeze, cfg.stage1.r, n_sys, n_sys, d, sq,
                      state, term, next);
  apply_phase(d, cfg.probe.phi, state);
  apply_exp_generator(PairKind::LossCoupling,
                      std::acos(std::sqrt(1.0 - cfg.losses.l)), n_sys, n_anc, d, sq,
                      state, term, next);
  apply_exp_generator(PairKind::DephaseCoupling,
                      std::acos(std::sqrt(1.0 - cfg.losses.eta)), n_sys, n_anc, d,
                      sq, state, term, next);
  apply_exp_generator(PairKind::TwoModeSqueeze, cfg.stage2.r, n_sys, n_sys, d, sq,
                      state, term, next);

  const double tail = truncation_tail(d, state);
  if (tail > options.tail_tolerance) {
    const int suggested = suggest_cutoff(d, state, tail, options.tail_tolerance);
    char msg[160];
    std::snprintf(msg, sizeof(msg),
                  "fock_oracle: cutoff insufficient (tail norm %.3e > %.3e); "
                  "increase n_system to about %d",
                  tail, options.tail_tolerance, suggested);
    throw CutoffError(msg, suggested);
  }

  const SingleModeMoments m =
      mode_moments(d, state, channel == OutputChannel::Optical ? 0 : 1);

  MomentReport report;
  report.mean_intensity = m.mean;
  report.intensity_variance = m.mean_sq - m.mean * m.mean;
  const cd lo = std::polar(1.0, options.lo_phase);
  report.quadrature_mean = 2.0 * std::real(m.lower_one * std::conj(lo));
  const double x_sq =
      2.0 * std::real(m.lower_two * std::conj(lo) * std::conj(lo)) + 2.0 * m.mean + 1.0;
  report.quadrature_variance = x_sq - report.quadrature_mean * report.quadrature_mean;

  return {report, tail};
}

}  // namespace salhi
