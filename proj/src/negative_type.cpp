#include "negtype/negative_type.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>

#include "negtype/error.hpp"

namespace negtype {

std::string_view to_string(PntStatus s) noexcept {
  return s == PntStatus::Finite ? "finite" : "infinite_beyond";
}

std::string_view to_string(Trigger t) noexcept {
  switch (t) {
    case Trigger::DetZero: return "det_zero";
    case Trigger::InnerZero: return "inner_zero";
    case Trigger::NotApplicable: return "not_applicable";
  }
  return "not_applicable";
}

double restricted_lambda_max(const Matrix& dp) {
  if (dp.rows() < 2) return -std::numeric_limits<double>::infinity();
  return sym_eigs(restrict_to_pi0(dp).form).back();
}

bool det_vanishes(const Matrix& dp, double tol_det) { return inverse_condition(dp) <= tol_det; }

bool inner_vanishes(const Matrix& dp, double tol_det) {
  return inverse_condition(bordered_matrix(dp)) <= tol_det;
}

bool has_negative_type(const MetricSpace& space, double p, double tol_eig) {
  const Matrix dp = p_distance_matrix(space, p);
  return restricted_lambda_max(dp) <= tol_eig * dp.max_abs();
}

Strictness strictness(const MetricSpace& space, double p, double tol_eig, double tol_det) {
  const Matrix dp = p_distance_matrix(space, p);
  if (restricted_lambda_max(dp) > tol_eig * dp.max_abs())
    throw Error(ErrorKind::NotNegativeType, "space does not have p-negative type at p = " +
                                                std::to_string(p));
  Strictness s;
  s.det = lu_det(dp);
  s.bordered_det = bordered_det(dp);
  s.det_zero = det_vanishes(dp, tol_det);
  s.inner_zero = !s.det_zero && inner_vanishes(dp, tol_det);
  s.strict = !s.det_zero && !s.inner_zero;
  return s;
}

bool has_strict_negative_type(const MetricSpace& space, double p, double tol_eig, double tol_det) {
  return strictness(space, p, tol_eig, tol_det).strict;
}

namespace {

constexpr int kMaxRescans = 8;
constexpr int kMaxBisections = 200;
// Grid points are evaluated in blocks so the scan can stop early at the
// first sign change without evaluating the whole range.
constexpr std::size_t kBlockPerThread = 16;

class ScanFunction {
 public:
  explicit ScanFunction(const MetricSpace& space) : space_(space) {}
  double operator()(double p) const {
    return restricted_lambda_max(p_distance_matrix(space_, p));
  }

 private:
  const MetricSpace& space_;
};

void evaluate_block(const ScanFunction& h, std::span<const double> ps, std::span<double> out,
                    unsigned threads) {
  if (threads <= 1 || ps.size() < 2) {
    for (std::size_t i = 0; i < ps.size(); ++i) out[i] = h(ps[i]);
    return;
  }
  const unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(ps.size()));
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < ps.size(); i += workers) out[i] = h(ps[i]);
    });
}

struct Bracket {
  double lo;
  double hi;
};

// First grid interval [p_{i-1}, p_i] with h(p_{i-1}) <= 0 < h(p_i), chosen
// by index so the answer does not depend on thread scheduling.
std::optional<Bracket> first_sign_change(const ScanFunction& h, double p_max, double step,
                                         unsigned threads) {
  const auto intervals = static_cast<std::size_t>(std::ceil(p_max / step - 1e-9));
  auto grid = [&](std::size_t i) { return std::min(static_cast<double>(i) * step, p_max); };

  if (h(0.0) > 0.0) return Bracket{0.0, 0.0};
  const std::size_t block = kBlockPerThread * std::max(1u, threads);
  std::vector<double> ps, hs;
  for (std::size_t start = 1; start <= intervals; start += block) {
    const std::size_t stop = std::min(intervals + 1, start + block);
    ps.resize(stop - start);
    hs.resize(stop - start);
    for (std::size_t i = start; i < stop; ++i) ps[i - start] = grid(i);
    evaluate_block(h, ps, hs, threads);
    for (std::size_t k = 0; k < hs.size(); ++k)
      if (hs[k] > 0.0) return Bracket{grid(start + k - 1), ps[k]};
  }
  return std::nullopt;
}

Bracket bisect(const ScanFunction& h, Bracket b, double tol_p) {
  for (int it = 0; it < kMaxBisections && b.hi - b.lo > tol_p; ++it) {
    const double mid = b.lo + 0.5 * (b.hi - b.lo);
    if (mid <= b.lo || mid >= b.hi) break;
    (h(mid) > 0.0 ? b.hi : b.lo) = mid;
  }
  return b;
}

void fill_diagnostics(const MetricSpace& space, PntResult& r) {
  const Matrix dp = p_distance_matrix(space, r.p);
  r.lambda_max = restricted_lambda_max(dp);
  r.det = lu_det(dp);
  r.bordered_det = bordered_det(dp);
}

}  // namespace

PntResult supremal_pnt(const MetricSpace& space, const PntConfig& cfg) {
  if (!(cfg.p_max > 0.0) || !(cfg.grid_step > 0.0) || !(cfg.tol_p > 0.0) || !std::isfinite(cfg.p_max))
    throw Error(ErrorKind::BadArgument, "p_max, grid_step and tol_p must be positive and finite");

  PntResult r;
  r.grid_step = cfg.grid_step;
  auto infinite = [&] {
    r.status = PntStatus::InfiniteBeyond;
    r.trigger = Trigger::NotApplicable;
    r.p = r.p_lo = r.p_hi = cfg.p_max;
    fill_diagnostics(space, r);
    return r;
  };
  // A single point satisfies every inequality vacuously.
  if (space.size() < 2) return infinite();

  const ScanFunction h(space);
  double step = cfg.grid_step;
  for (int attempt = 0;; ++attempt) {
    const auto change = first_sign_change(h, cfg.p_max, step, cfg.threads);
    r.grid_step = step;
    r.rescans = attempt;
    if (!change) return infinite();

    const Bracket b = bisect(h, *change, cfg.tol_p);
    const double root = b.lo + 0.5 * (b.hi - b.lo);
    const bool beyond_ok = root + step > cfg.p_max || h(root + step) > 0.0;
    const bool below_ok = h(std::max(0.0, root - step)) <= 0.0;

    r.status = PntStatus::Finite;
    r.p = root;
    r.p_lo = b.lo;
    r.p_hi = b.hi;
    if ((beyond_ok && below_ok) || attempt >= kMaxRescans) break;
    step *= 0.5;
  }

  fill_diagnostics(space, r);
  const Matrix dp = p_distance_matrix(space, r.p);
  r.trigger = det_vanishes(dp, cfg.tol_det) ? Trigger::DetZero : Trigger::InnerZero;
  return r;
}

Simplex simplex_from_vector(std::span<const double> alpha, double zero_tol) {
  const double cut = zero_tol * norm_inf(alpha);
  Simplex s;
  double pos = 0.0, neg = 0.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    if (alpha[i] > cut) {
      s.a_side.push_back({i, alpha[i]});
      pos += alpha[i];
    } else if (alpha[i] < -cut) {
      s.b_side.push_back({i, -alpha[i]});
      neg -= alpha[i];
    }
  }
  if (s.a_side.empty() || s.b_side.empty())
    throw Error(ErrorKind::DegenerateVector, "weight vector does not have both signs");
  for (auto& w : s.a_side) w.weight /= pos;
  for (auto& w : s.b_side) w.weight /= neg;
  return s;
}

ExtremalCertificate extremal_vector(const MetricSpace& space, const PntResult& result) {
  if (!result.finite())
    throw Error(ErrorKind::InfiniteType, "no extremal vector: supremal exponent not finite within p_max");
  const std::size_t n = space.size();
  const Matrix dp = p_distance_matrix(space, result.p);

  Vector alpha(n, 0.0);
  if (result.trigger == Trigger::DetZero) {
    const auto rf = restrict_to_pi0(dp);
    const auto eig = sym_eigen(rf.form);
    std::size_t best = 0;
    for (std::size_t k = 1; k < eig.values.size(); ++k)
      if (std::abs(eig.values[k]) < std::abs(eig.values[best])) best = k;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k + 1 < n; ++k) alpha[i] += rf.basis(i, k) * eig.vectors(k, best);
  } else {
    alpha = solve(dp, Vector(n, 1.0));
    double mean = 0.0;
    for (double a : alpha) mean += a;
    mean /= static_cast<double>(n);
    for (double& a : alpha) a -= mean;
  }

  // Largest-magnitude entry becomes -1.
  std::size_t lead = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(alpha[i]) > std::abs(alpha[lead])) lead = i;
  if (alpha[lead] == 0.0) throw Error(ErrorKind::DegenerateVector, "extremal vector vanished");
  const double scale = -1.0 / alpha[lead];
  for (double& a : alpha) a *= scale;

  ExtremalCertificate cert;
  cert.simplex = simplex_from_vector(alpha);
  cert.form_value = quadratic_form(dp, alpha);
  cert.roundness_gap = roundness_gap(space, cert.simplex, result.p);
  cert.alpha = std::move(alpha);
  return cert;
}

double roundness_gap(const MetricSpace& space, const Simplex& simplex, double p) {
  const std::size_t n = space.size();
  std::vector<int> side(n, 0);
  for (const auto* group : {&simplex.a_side, &simplex.b_side}) {
    double total = 0.0;
    for (const auto& w : *group) {
      if (w.index >= n) throw Error(ErrorKind::BadSize, {w.index}, "simplex index out of range");
      if (side[w.index] != 0)
        throw Error(ErrorKind::OverlappingSimplex, {w.index}, "point used twice in simplex");
      if (!(w.weight > 0.0))
        throw Error(ErrorKind::UnnormalizedWeights, {w.index}, "simplex weights must be positive");
      side[w.index] = group == &simplex.a_side ? 1 : 2;
      total += w.weight;
    }
    if (group->empty() || std::abs(total - 1.0) > 1e-10)
      throw Error(ErrorKind::UnnormalizedWeights, "each side of the simplex must sum to 1");
  }

  auto dpow = [&](std::size_t i, std::size_t j) { return std::pow(space(i, j), p); };
  auto same_side = [&](const std::vector<WeightedPoint>& g) {
    double s = 0.0;
    for (std::size_t x = 0; x < g.size(); ++x)
      for (std::size_t y = x + 1; y < g.size(); ++y)
        s += g[x].weight * g[y].weight * dpow(g[x].index, g[y].index);
    return s;
  };
  double cross = 0.0;
  for (const auto& a : simplex.a_side)
    for (const auto& b : simplex.b_side) cross += a.weight * b.weight * dpow(a.index, b.index);
  return cross - same_side(simplex.a_side) - same_side(simplex.b_side);
}

bool negative_type_oracle(const MetricSpace& space, double p, std::size_t trials,
                          std::uint64_t seed, double tol) {
  const std::size_t n = space.size();
  if (n < 2) return true;
  const Matrix dp = p_distance_matrix(space, p);
  const double cut = tol * dp.max_abs();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  Vector alpha(n);
  std::vector<bool> used(n);
  for (std::size_t t = 0; t < trials; ++t) {
    // Even trials use every point; odd trials a random subset of >= 2 points.
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      used[i] = t % 2 == 0 || coin(rng);
      count += used[i];
    }
    if (count < 2) {
      std::fill(used.begin(), used.end(), true);
      count = n;
    }

    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      alpha[i] = used[i] ? normal(rng) : 0.0;
      mean += alpha[i];
    }
    mean /= static_cast<double>(count);
    for (std::size_t i = 0; i < n; ++i)
      if (used[i]) alpha[i] -= mean;

    if (quadratic_form(dp, alpha) > cut * dot(alpha, alpha)) return false;
  }
  return true;
}

Vector negative_type_witness(const MetricSpace& space, double p) {
  const std::size_t n = space.size();
  if (n < 2) return Vector(n, 0.0);
  const auto rf = restrict_to_pi0(p_distance_matrix(space, p));
  const auto eig = sym_eigen(rf.form);
  const std::size_t top = eig.values.size() - 1;
  Vector w(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k + 1 < n; ++k) w[i] += rf.basis(i, k) * eig.vectors(k, top);
  return w;
}

std::vector<TraceRow> trace(const MetricSpace& space, double p_from, double p_to, double step,
                            double tol_det) {
  if (!(p_from >= 0.0) || !(p_to > p_from) || !(step > 0.0) || !std::isfinite(p_to))
    throw Error(ErrorKind::BadArgument, "trace needs 0 <= from < to and step > 0");
  std::vector<TraceRow> rows;
  const auto count = static_cast<std::size_t>(std::floor((p_to - p_from) / step + 0.5));
  rows.reserve(count + 1);
  for (std::size_t i = 0; i <= count; ++i) {
    const double p = p_from + static_cast<double>(i) * step;
    const Matrix dp = p_distance_matrix(space, p);
    TraceRow row{p, lu_det(dp), bordered_det(dp), std::nullopt, restricted_lambda_max(dp)};
    if (!det_vanishes(dp, tol_det)) {
      const Vector ones(dp.rows(), 1.0);
      row.inner = dot(solve(dp, ones), ones);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace negtype
