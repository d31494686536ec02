#include "hdgrid/hausdorff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hdgrid/errors.hpp"
#include "hdgrid/parallel.hpp"
#include "point_index.hpp"

namespace hdgrid {

const char* to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::None: return "none";
    case BoundKind::WorstCase: return "worst_case";
    case BoundKind::Suitable: return "suitable";
    case BoundKind::External: return "external";
  }
  return "?";
}

namespace {

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!(a.grid() == b.grid())) throw Error("grid mismatch");
}

struct OneSided {
  double value = 0.0;
  std::size_t index = 0;
  Vec from{0, 0, 0};
  Vec to{0, 0, 0};
};

// sup over p in `from` of the distance to the closed set `target` whose
// point cloud is indexed by `index`. in_target decides exact membership.
template <typename InTarget>
OneSided one_sided(const std::vector<Vec>& from, const detail::PointIndex& index, InTarget&& in_target,
                   int threads) {
  const std::size_t chunks = chunk_count(from.size(), threads);
  std::vector<OneSided> partial(chunks);
  parallel_chunks(from.size(), threads, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    OneSided best;
    best.value = -1.0;
    for (std::size_t i = begin; i < end; ++i) {
      if (in_target(from[i])) {
        if (best.value < 0.0) best = {0.0, i, from[i], from[i]};
        continue;
      }
      Vec where{};
      const double d = index.nearest(from[i], &where);
      if (d > best.value) best = {d, i, from[i], where};
    }
    partial[chunk] = best;
  });
  OneSided out;
  out.value = -1.0;
  for (const auto& p : partial)
    if (p.value > out.value) out = p;
  if (out.value < 0.0) out.value = 0.0;
  return out;
}

std::vector<Vec> lattice_in_box(int dim, const Aabb& box, double gap) {
  std::array<long long, 3> lo{0, 0, 0}, hi{0, 0, 0};
  for (int k = 0; k < dim; ++k) {
    lo[k] = static_cast<long long>(std::ceil(box.lo[k] / gap - 1e-9));
    hi[k] = static_cast<long long>(std::floor(box.hi[k] / gap + 1e-9));
  }
  std::vector<Vec> pts;
  for (long long k2 = lo[2]; k2 <= hi[2]; ++k2)
    for (long long k1 = lo[1]; k1 <= hi[1]; ++k1)
      for (long long k0 = lo[0]; k0 <= hi[0]; ++k0) pts.push_back({k0 * gap, k1 * gap, k2 * gap});
  return pts;
}

}  // namespace

HausdorffReport dh_approx(const ScalarField& dA, const ScalarField& dB) {
  require_same_grid(dA, dB);
  HausdorffReport r;
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i < dA.size(); ++i) {
    if (dA[i] < 0.0 || dB[i] < 0.0)
      throw Error("dh_approx expects unsigned distance fields; apply positive_part first");
    const double v = std::abs(dA[i] - dB[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  const double tol = 1e-12 * std::max(1.0, best_val);
  for (std::size_t i = 0; i < dA.size(); ++i)
    if (std::abs(dA[i] - dB[i]) >= best_val - tol) ++r.tie_count;
  r.d_tilde = best_val;
  r.argmax = dA.grid().unravel(best);
  return r;
}

OracleResult dh_oracle(const Shape& a, const Shape& b, double gap, int threads) {
  if (a.dim() != b.dim()) throw Error("shapes have different dimensions");
  if (!a.bounds() || !b.bounds()) throw Error("oracle needs bounded shapes");
  const auto pa = sample_closed_set(a, gap);
  const auto pb = sample_closed_set(b, gap);
  const detail::PointIndex ia(pa), ib(pb);
  const auto ab = one_sided(pa, ib, [&](const Vec& p) { return b.contains(p); }, threads);
  const auto ba = one_sided(pb, ia, [&](const Vec& p) { return a.contains(p); }, threads);
  OracleResult r;
  r.one_sided_ab = ab.value;
  r.one_sided_ba = ba.value;
  r.dh = std::max(ab.value, ba.value);
  r.witness = ab.value >= ba.value ? std::pair{ab.from, ab.to} : std::pair{ba.from, ba.to};
  r.error_bound = 2.0 * std::sqrt(static_cast<double>(a.dim())) * gap;
  return r;
}

double dh_complementary_oracle(const Shape& a, const Shape& b, double gap, const Aabb& bbox, int threads) {
  if (a.dim() != b.dim()) throw Error("shapes have different dimensions");
  const int dim = a.dim();
  for (const Shape* s : {&a, &b}) {
    const auto sb = s->bounds();
    if (!sb) throw Error("complementary oracle needs bounded shapes");
    for (int k = 0; k < dim; ++k)
      if (!(bbox.lo[k] < sb->lo[k] && sb->hi[k] < bbox.hi[k]))
        throw Error("bbox must strictly contain both shapes");
  }
  const auto lattice = lattice_in_box(dim, bbox, gap);
  auto complement_cloud = [&](const Shape& s) {
    std::vector<Vec> pts;
    for (const auto& p : lattice)
      if (s.evaluate_sd(p) >= -1e-9) pts.push_back(p);
    try {
      const auto bd = sample_boundary(s, gap).points;
      pts.insert(pts.end(), bd.begin(), bd.end());
    } catch (const Error&) {
    }
    return pts;
  };
  const auto ca = complement_cloud(a);
  const auto cb = complement_cloud(b);
  if (ca.empty() || cb.empty()) throw Error("empty set");
  const detail::PointIndex ia(ca), ib(cb);
  const auto ab = one_sided(ca, ib, [&](const Vec& p) { return b.evaluate_sd(p) >= 0.0; }, threads);
  const auto ba = one_sided(cb, ia, [&](const Vec& p) { return a.evaluate_sd(p) >= 0.0; }, threads);
  const OneSided& w = ab.value >= ba.value ? ab : ba;
  if (w.value > 0.0) {
    for (int k = 0; k < dim; ++k)
      if (w.from[k] - bbox.lo[k] <= gap || bbox.hi[k] - w.from[k] <= gap) throw Error("bbox too small");
  }
  return w.value;
}

SupNorm sd_supnorm(const ScalarField& sdA, const ScalarField& sdB) {
  require_same_grid(sdA, sdB);
  SupNorm out;
  std::size_t best = 0;
  double best_val = -1.0;
  for (std::size_t i = 0; i < sdA.size(); ++i) {
    const double v = std::abs(sdA[i] - sdB[i]);
    if (v > best_val) {
      best_val = v;
      best = i;
    }
  }
  out.value = best_val;
  out.argmax = sdA.grid().unravel(best);
  return out;
}

double md_oracle(const Shape& s, const Vec& x, double gap) {
  const auto pts = sample_closed_set(s, gap);
  double best = 0.0;
  for (const auto& p : pts) best = std::max(best, distance(p, x));
  return best;
}

}  // namespace hdgrid
