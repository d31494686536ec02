#include "hdgrid/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hdgrid/errors.hpp"

namespace hdgrid {

double lipschitz_t(const Vec& x, const Vec& y, bool x_in_set) {
  const double d = distance(x, y);
  return x_in_set ? d : 2.0 * d;
}

namespace {

// Evaluates the sampled cell bound given corner positions and values.
double sampled_cell(const Grid& g, const Index& cell, const std::vector<double>& corner_diff,
                    const std::vector<bool>& corner_in_set, int m) {
  const int dim = g.dim();
  const auto corners = g.cell_corners(cell);
  std::vector<Vec> pos;
  pos.reserve(corners.size());
  for (const auto& c : corners) pos.push_back(g.node_position(c));
  const Vec lo = pos.front();
  const double h = g.spacing();
  std::array<int, 3> lim{0, 0, 0};
  for (int k = 0; k < dim; ++k) lim[k] = m - 1;
  double best = 0.0;
  for (int j2 = 0; j2 <= lim[2]; ++j2)
    for (int j1 = 0; j1 <= lim[1]; ++j1)
      for (int j0 = 0; j0 <= lim[0]; ++j0) {
        const std::array<int, 3> jj{j0, j1, j2};
        Vec y = lo;
        for (int k = 0; k < dim; ++k) y[k] = lo[k] + h * jj[k] / (m - 1);
        double v = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < pos.size(); ++c)
          v = std::min(v, corner_diff[c] + lipschitz_t(pos[c], y, corner_in_set[c]));
        best = std::max(best, v);
      }
  return best;
}

}  // namespace

double cell_upper_bound_sampled(const Grid& g, const Index& cell, const ScalarField& dA, const ScalarField& dB,
                                const std::vector<bool>& corner_in_set, int m) {
  if (m < 2) throw Error("need at least 2 samples per axis");
  if (!(dA.grid() == g) || !(dB.grid() == g)) throw Error("grid mismatch");
  const auto corners = g.cell_corners(cell);
  if (corner_in_set.size() != corners.size()) throw Error("membership must list every corner");
  std::vector<double> diff;
  diff.reserve(corners.size());
  for (const auto& c : corners) diff.push_back(std::abs(dA.at(c) - dB.at(c)));
  return sampled_cell(g, cell, diff, corner_in_set, m);
}

double general_upper_bound_sampled(const ScalarField& dA, const ScalarField& dB, int m) {
  if (!(dA.grid() == dB.grid())) throw Error("grid mismatch");
  const Grid& g = dA.grid();
  const double reach = std::sqrt(static_cast<double>(g.dim())) * g.spacing();
  double best = 0.0;
  for (std::size_t lc = 0; lc < g.cell_count(); ++lc) {
    const Index cell = g.cell_at(lc);
    const auto corners = g.cell_corners(cell);
    std::vector<double> diff;
    std::vector<bool> inA, inB;
    double minA = std::numeric_limits<double>::infinity(), minB = minA;
    for (const auto& c : corners) {
      const double a = dA.at(c), b = dB.at(c);
      diff.push_back(std::abs(a - b));
      inA.push_back(a == 0.0);
      inB.push_back(b == 0.0);
      minA = std::min(minA, a);
      minB = std::min(minB, b);
    }
    // A cell touching a set has every corner within one diagonal of it.
    if (minA <= reach) best = std::max(best, sampled_cell(g, cell, diff, inA, m));
    if (minB <= reach) best = std::max(best, sampled_cell(g, cell, diff, inB, m));
  }
  return best;
}

double worst_case_bound(const HausdorffReport& report, const Grid& g) {
  return report.d_tilde + std::sqrt(static_cast<double>(g.dim())) * g.spacing();
}

std::optional<double> suitable_bound(const HausdorffReport& report, const Grid& g, bool suitable) {
  if (!suitable) return std::nullopt;
  return report.d_tilde + delta_closed_form(g.dim()) * g.spacing();
}

bool check_suitable(const Grid& g, const Shape& s, double gap) {
  if (!(gap > 0.0)) throw Error("sampling gap must be positive");
  if (s.dim() != g.dim()) throw Error("shape and grid dimensions differ");
  const int dim = g.dim();
  const double h = g.spacing();
  const double diag = std::sqrt(static_cast<double>(dim)) * h;
  const auto box = s.bounds();
  if (box && box->empty(dim)) return true;
  const int m = std::max(2, static_cast<int>(std::ceil(h / gap)) + 1);
  for (std::size_t lc = 0; lc < g.cell_count(); ++lc) {
    const Index cell = g.cell_at(lc);
    const auto corners = g.cell_corners(cell);
    const Vec lo = g.node_position(corners.front());
    if (box) {
      bool disjoint = false;
      for (int k = 0; k < dim; ++k)
        if (lo[k] > box->hi[k] || lo[k] + h < box->lo[k]) disjoint = true;
      if (disjoint) continue;
    }
    bool all_out = true;
    double far = 0.0;
    for (const auto& c : corners) {
      const double v = s.evaluate_sd(g.node_position(c));
      if (v <= 0.0) {
        all_out = false;
        break;
      }
      far = std::max(far, v);
    }
    if (!all_out) continue;
    if (s.exact_distance() && far > diag) continue;
    std::array<int, 3> lim{0, 0, 0};
    for (int k = 0; k < dim; ++k) lim[k] = m - 1;
    for (int j2 = 0; j2 <= lim[2]; ++j2)
      for (int j1 = 0; j1 <= lim[1]; ++j1)
        for (int j0 = 0; j0 <= lim[0]; ++j0) {
          const std::array<int, 3> jj{j0, j1, j2};
          Vec y = lo;
          for (int k = 0; k < dim; ++k) y[k] = lo[k] + h * jj[k] / (m - 1);
          if (s.evaluate_sd(y) <= 0.0) return false;
        }
  }
  return true;
}

double delta_closed_form(int dim) {
  switch (dim) {
    case 1: return 2.0 / 3.0;
    case 2: return 2.0 / 3.0 * std::sqrt(5.0 - std::sqrt(7.0));
    case 3: return 2.0 / 3.0 * std::sqrt(8.0 - std::sqrt(19.0));
    default: throw Error("dimensional constant only known for n <= 3");
  }
}

namespace {

// Pieces of F: index 0 is |y|, the rest are 2|y - x| for non-origin corners.
struct Piece {
  double value;
  Vec grad;
};

std::vector<Piece> delta_pieces(int dim, const Vec& y) {
  std::vector<Piece> out;
  const double ny = norm(y);
  out.push_back({ny, ny > 0.0 ? (1.0 / ny) * y : Vec{0, 0, 0}});
  for (unsigned bits = 1; bits < (1u << dim); ++bits) {
    Vec x{0, 0, 0};
    for (int k = 0; k < dim; ++k) x[k] = (bits >> k) & 1u ? 1.0 : 0.0;
    const Vec diff = y - x;
    const double d = norm(diff);
    out.push_back({2.0 * d, d > 0.0 ? (2.0 / d) * diff : Vec{0, 0, 0}});
  }
  return out;
}

// Solves the (n+1)x(n+1) system by Gaussian elimination with partial pivoting.
bool solve_small(std::vector<std::vector<double>> a, std::vector<double> b, std::vector<double>& x) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    if (std::abs(a[piv][col]) < 1e-12) return false;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  x.assign(n, 0.0);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t c = i + 1; c < n; ++c) s -= a[i][c] * x[c];
    x[i] = s / a[i][i];
  }
  return true;
}

// Linearized subproblem: maximize t subject to t <= f_i + g_i . s and
// lo <= s <= hi. Solved exactly by enumerating vertices (at most 14 rows,
// 4 unknowns), which is cheap at this size.
bool lp_step(int dim, const std::vector<Piece>& pieces, const Vec& lo, const Vec& hi, Vec& step, double& t_best) {
  struct Row {
    std::vector<double> a;
    double b;
  };
  const std::size_t nv = static_cast<std::size_t>(dim) + 1;
  std::vector<Row> rows;
  for (const auto& p : pieces) {
    Row r{std::vector<double>(nv, 0.0), p.value};
    for (int k = 0; k < dim; ++k) r.a[k] = -p.grad[k];
    r.a[dim] = 1.0;
    rows.push_back(r);
  }
  for (int k = 0; k < dim; ++k) {
    Row up{std::vector<double>(nv, 0.0), hi[k]};
    up.a[k] = 1.0;
    rows.push_back(up);
    Row down{std::vector<double>(nv, 0.0), -lo[k]};
    down.a[k] = -1.0;
    rows.push_back(down);
  }
  const std::size_t nr = rows.size();
  bool found = false;
  t_best = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(nv);
  // Enumerate index combinations of size nv in lexicographic order.
  for (std::size_t i = 0; i < nv; ++i) pick[i] = i;
  while (true) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (auto i : pick) {
      a.push_back(rows[i].a);
      b.push_back(rows[i].b);
    }
    std::vector<double> v;
    if (solve_small(a, b, v)) {
      bool feasible = true;
      for (const auto& r : rows) {
        double lhs = 0.0;
        for (std::size_t c = 0; c < nv; ++c) lhs += r.a[c] * v[c];
        if (lhs > r.b + 1e-12 * (1.0 + std::abs(r.b))) {
          feasible = false;
          break;
        }
      }
      if (feasible && v[dim] > t_best) {
        t_best = v[dim];
        step = {0, 0, 0};
        for (int k = 0; k < dim; ++k) step[k] = v[k];
        found = true;
      }
    }
    std::size_t i = nv;
    while (i > 0 && pick[i - 1] == nr - nv + (i - 1)) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < nv; ++j) pick[j] = pick[j - 1] + 1;
  }
  return found;
}

Vec refine(int dim, Vec y) {
  double radius = 0.1;
  double f = delta_objective(dim, y);
  for (int iter = 0; iter < 500 && radius > 1e-15; ++iter) {
    const auto pieces = delta_pieces(dim, y);
    Vec lo{0, 0, 0}, hi{0, 0, 0};
    for (int k = 0; k < dim; ++k) {
      lo[k] = std::max(-radius, -y[k]);
      hi[k] = std::min(radius, 1.0 - y[k]);
    }
    Vec step{0, 0, 0};
    double t = 0.0;
    if (!lp_step(dim, pieces, lo, hi, step, t)) break;
    const double predicted = t - f;
    if (predicted <= 1e-16) break;
    Vec trial = y + step;
    for (int k = 0; k < dim; ++k) trial[k] = std::clamp(trial[k], 0.0, 1.0);
    const double ft = delta_objective(dim, trial);
    const double ratio = (ft - f) / predicted;
    double step_inf = 0.0;
    for (int k = 0; k < dim; ++k) step_inf = std::max(step_inf, std::abs(step[k]));
    if (ratio > 0.0 && ft > f) {
      y = trial;
      f = ft;
    }
    if (ratio < 0.25)
      radius = 0.25 * std::max(step_inf, radius * 1e-3);
    else if (ratio > 0.75 && step_inf > 0.99 * radius)
      radius = std::min(2.0 * radius, 0.5);
  }
  return y;
}

}  // namespace

double delta_objective(int dim, const Vec& y) {
  const auto pieces = delta_pieces(dim, y);
  double v = std::numeric_limits<double>::infinity();
  for (const auto& p : pieces) v = std::min(v, p.value);
  return v;
}

DeltaConstant compute_delta(int dim, int starts, std::uint64_t seed) {
  if (dim < 1 || dim > 3) throw Error("dimension must be 1, 2 or 3");
  if (starts < 1) throw Error("need at least one start");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  DeltaConstant best{dim, -1.0, {0, 0, 0}};
  for (int s = 0; s < starts; ++s) {
    Vec y{0, 0, 0};
    for (int k = 0; k < dim; ++k) y[k] = unif(rng);
    y = refine(dim, y);
    const double v = delta_objective(dim, y);
    if (v > best.value) best = {dim, v, y};
  }
  return best;
}

namespace {

// Distance from a point inside the union of two open discs of equal radius
// to the complement of that union.
double distance_out_of_two_discs(const Vec& x, const Vec& c1, const Vec& c2, double rad) {
  const auto inside = [&](const Vec& q, const Vec& c) { return distance(q, c) < rad - 1e-14; };
  if (!inside(x, c1) && !inside(x, c2)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const std::array<std::pair<Vec, Vec>, 2> discs{{{c1, c2}, {c2, c1}}};
  for (const auto& [c, other] : discs) {
    Vec dir = x - c;
    double len = norm(dir);
    if (len < 1e-14) {
      dir = c - other;
      len = norm(dir);
    }
    const Vec q = c + (rad / len) * dir;
    if (!inside(q, other)) best = std::min(best, distance(x, q));
  }
  // Boundary corners where the two circles cross.
  const Vec mid = 0.5 * (c1 + c2);
  const double half = 0.5 * distance(c1, c2);
  if (half < rad) {
    const double off = std::sqrt(rad * rad - half * half);
    const Vec axis = (1.0 / (2.0 * half)) * (c2 - c1);
    const Vec perp{-axis[1], axis[0], 0.0};
    best = std::min(best, distance(x, mid + off * perp));
    best = std::min(best, distance(x, mid - off * perp));
  }
  return best;
}

}  // namespace

MaximalErrorScene build_maximal_error_scene(double h, double rho) {
  if (!(h > 0.0)) throw Error("grid spacing must be positive");
  if (!(rho > 0.0)) throw Error("rho must be positive");
  const double r = delta_closed_form(2) * h;
  const Vec p{(8.0 - std::sqrt(7.0)) / 6.0 * h, 0.5 * h, 0.0};
  const Vec b{0, 0, 0}, a{h, 0, 0}, c{0, h, 0}, d{h, h, 0};
  const double tol = 1e-12 * std::max(1.0, h);
  if (std::abs(distance(a, p) - r / 2) > tol || std::abs(distance(d, p) - r / 2) > tol ||
      std::abs(distance(b, p) - r) > tol || std::abs(distance(c, p) - r) > tol)
    throw Error("maximal error construction violates its defining relations");

  Grid grid(2, {-2.0 * h, -2.0 * h, 0.0}, h, {6, 6, 1});
  // The hole of B may only swallow the four cell corners.
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const Vec x = grid.node_position(i);
    const bool corner = distance(x, a) < tol || distance(x, b) < tol || distance(x, c) < tol || distance(x, d) < tol;
    if (!corner && distance(x, p) <= r + rho) throw Error("rho too large: hole reaches further grid nodes");
  }

  std::vector<double> va(grid.node_count()), vb(grid.node_count());
  for (std::size_t i = 0; i < grid.node_count(); ++i) {
    const Vec x = grid.node_position(i);
    va[i] = distance_out_of_two_discs(x, a, d, r / 2);
    vb[i] = std::max(0.0, r + rho - distance(x, p));
  }
  const Shape domain = Shape::box(2, grid.lower(), grid.upper());
  Shape set_a = Shape::difference(domain, Shape::unite({Shape::ball(2, a, r / 2), Shape::ball(2, d, r / 2)}));
  Shape set_b = Shape::difference(domain, Shape::ball(2, p, r + rho));
  return MaximalErrorScene{grid,
                           ScalarField(grid, std::move(va)),
                           ScalarField(grid, std::move(vb)),
                           std::move(set_a),
                           std::move(set_b),
                           p,
                           r,
                           rho,
                           rho,
                           r + rho};
}

ExternalCert certify_external(const Shape& a, const Shape& b, const Vec& x, const Vec& y, double r, double gap) {
  const double dist = distance(x, y);
  if (!(dist > 0.0)) throw Error("degenerate witness: x == y");
  if (!(r > 0.0)) throw Error("radius must be positive");
  ExternalCert cert;
  cert.x = x;
  cert.y = y;
  cert.direction = (1.0 / dist) * (x - y);
  cert.r = r;
  cert.c = x + r * cert.direction;
  cert.R = r + dist;
  cert.tolerance = 2.0 * gap;
  const auto margin = [&](const Shape& s, const Vec& exclude, double radius) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& p : sample_closed_set(s, gap)) {
      if (distance(p, exclude) <= 1e-12) continue;
      best = std::min(best, distance(p, cert.c) - radius);
    }
    return best;
  };
  cert.slack = std::min(margin(a, x, cert.r), margin(b, y, cert.R));
  cert.admissible = cert.slack >= -cert.tolerance;
  return cert;
}

double external_bound_term(int dim, double h, double r) {
  const double sn = std::sqrt(static_cast<double>(dim));
  if (!(h > 0.0)) throw Error("grid spacing must be positive");
  if (!(h < r / sn)) throw Error("external bound needs h < r / sqrt(n)");
  const double u = r - sn * h;
  // sqrt(n h^2 + u^2) - u, rearranged to avoid cancellation.
  return dim * h * h / (std::sqrt(dim * h * h + u * u) + u);
}

double external_bound(const HausdorffReport& report, const ExternalCert& cert, const Grid& g) {
  if (!cert.admissible) throw Error("external certificate is not admissible");
  if (!g.contains(cert.x) || !g.contains(cert.c)) throw Error("grid too small for the external segment");
  return report.d_tilde + external_bound_term(g.dim(), g.spacing(), cert.r);
}

}  // namespace hdgrid
