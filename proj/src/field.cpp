#include "hdgrid/field.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <utility>

#include "hdgrid/errors.hpp"
#include "hdgrid/format.hpp"

namespace hdgrid {

ScalarField::ScalarField(Grid grid, std::vector<double> values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.node_count()) throw Error("field size does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw Error("field values must be finite");
}

ScalarField::ScalarField(Grid grid, double fill) : grid_(std::move(grid)), values_(grid_.node_count(), fill) {}

ScalarField sample_level_set(const Grid& g, const Shape& s) {
  if (s.dim() != g.dim()) throw Error("shape and grid dimensions differ");
  std::vector<double> v(g.node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = s.evaluate_sd(g.node_position(i));
  return ScalarField(g, std::move(v));
}

ScalarField sample_exact_sd(const Grid& g, const Shape& s) {
  if (!s.exact_sd()) throw Error("shape signed distance is not exact; redistance it instead");
  if (!g.covers(s)) throw Error("grid does not cover the shape");
  return sample_level_set(g, s);
}

ScalarField sample_exact_distance(const Grid& g, const Shape& s) {
  if (!s.exact_distance()) throw Error("shape distance is not exact; redistance it instead");
  if (!g.covers(s)) throw Error("grid does not cover the shape");
  return positive_part(sample_level_set(g, s));
}

ScalarField positive_part(const ScalarField& sd) {
  std::vector<double> v(sd.values());
  for (double& x : v) x = std::max(x, 0.0);
  return ScalarField(sd.grid(), std::move(v));
}

ScalarField negative_part(const ScalarField& sd) {
  std::vector<double> v(sd.values());
  for (double& x : v) x = std::max(-x, 0.0);
  return ScalarField(sd.grid(), std::move(v));
}

namespace {

enum class State : unsigned char { Far, Trial, Known };

struct Marcher {
  const Grid& g;
  const std::vector<char>& inside;
  std::vector<double>& dist;
  std::vector<State>& state;
  std::array<std::size_t, 3> stride{1, 1, 1};
  double h;

  Marcher(const Grid& grid, const std::vector<char>& in, std::vector<double>& d, std::vector<State>& st)
      : g(grid), inside(in), dist(d), state(st), h(grid.spacing()) {
    for (int k = 1; k < g.dim(); ++k) stride[k] = stride[k - 1] * static_cast<std::size_t>(g.counts()[k - 1]);
  }

  // Smallest Known value among the two neighbours along each axis.
  double solve(std::size_t idx) const {
    const Index i = g.unravel(idx);
    std::array<double, 3> a{};
    int m = 0;
    for (int k = 0; k < g.dim(); ++k) {
      double best = std::numeric_limits<double>::infinity();
      if (i[k] > 0 && state[idx - stride[k]] == State::Known) best = std::min(best, dist[idx - stride[k]]);
      if (i[k] + 1 < g.counts()[k] && state[idx + stride[k]] == State::Known)
        best = std::min(best, dist[idx + stride[k]]);
      if (std::isfinite(best)) a[m++] = best;
    }
    std::sort(a.begin(), a.begin() + m);
    // Solve sum_k (d - a_k)^2 = h^2 over the largest prefix of a that stays upwind.
    double d = a[0] + h;
    double sum = a[0];
    double sum2 = a[0] * a[0];
    for (int j = 1; j < m; ++j) {
      if (d <= a[j]) break;
      sum += a[j];
      sum2 += a[j] * a[j];
      const double cnt = j + 1;
      const double disc = sum * sum - cnt * (sum2 - h * h);
      d = (sum + std::sqrt(std::max(disc, 0.0))) / cnt;
    }
    return d;
  }

  void march(bool side_inside) {
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    auto push_neighbours = [&](std::size_t idx) {
      const Index i = g.unravel(idx);
      for (int k = 0; k < g.dim(); ++k) {
        for (int dir = -1; dir <= 1; dir += 2) {
          const std::int64_t c = i[k] + dir;
          if (c < 0 || c >= g.counts()[k]) continue;
          const std::size_t j = dir < 0 ? idx - stride[k] : idx + stride[k];
          if (state[j] == State::Known || static_cast<bool>(inside[j]) != side_inside) continue;
          const double d = solve(j);
          if (d < dist[j]) {
            dist[j] = d;
            state[j] = State::Trial;
            heap.emplace(d, j);
          }
        }
      }
    };
    for (std::size_t idx = 0; idx < dist.size(); ++idx)
      if (state[idx] == State::Known) push_neighbours(idx);
    while (!heap.empty()) {
      const auto [d, idx] = heap.top();
      heap.pop();
      if (state[idx] == State::Known || d != dist[idx]) continue;
      state[idx] = State::Known;
      push_neighbours(idx);
    }
  }
};

}  // namespace

ScalarField fast_march(const ScalarField& phi) {
  const Grid& g = phi.grid();
  const std::size_t n = g.node_count();
  std::vector<char> inside(n);
  bool any_in = false, any_out = false;
  for (std::size_t i = 0; i < n; ++i) {
    inside[i] = phi[i] <= 0.0;
    (inside[i] ? any_in : any_out) = true;
  }
  if (!any_in || !any_out) throw Error("no interface");

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<State> state(n, State::Far);
  std::array<std::size_t, 3> stride{1, 1, 1};
  for (int k = 1; k < g.dim(); ++k) stride[k] = stride[k - 1] * static_cast<std::size_t>(g.counts()[k - 1]);
  const double h = g.spacing();

  // Initial band: nodes with a sign-changing edge, distance from the
  // linearly interpolated crossing points, combined across axes.
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Index i = g.unravel(idx);
    double inv2 = 0.0;
    bool band = false;
    bool on_interface = false;
    for (int k = 0; k < g.dim(); ++k) {
      double axis_best = std::numeric_limits<double>::infinity();
      for (int dir = -1; dir <= 1; dir += 2) {
        const std::int64_t c = i[k] + dir;
        if (c < 0 || c >= g.counts()[k]) continue;
        const std::size_t j = dir < 0 ? idx - stride[k] : idx + stride[k];
        if (inside[j] == inside[idx]) continue;
        const double theta = phi[idx] / (phi[idx] - phi[j]);
        axis_best = std::min(axis_best, std::abs(theta) * h);
      }
      if (std::isfinite(axis_best)) {
        band = true;
        if (axis_best == 0.0)
          on_interface = true;
        else
          inv2 += 1.0 / (axis_best * axis_best);
      }
    }
    if (band) {
      dist[idx] = on_interface ? 0.0 : 1.0 / std::sqrt(inv2);
      state[idx] = State::Known;
    }
  }

  // Both sides march from the same band; each pass only accepts its own side.
  // Off-side nodes adjacent to a side are always band nodes, so the passes
  // never read each other's results.
  Marcher m(g, inside, dist, state);
  m.march(false);
  m.march(true);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(dist[i])) throw Error("fast marching left unreachable nodes");
    out[i] = inside[i] ? -dist[i] : dist[i];
  }
  return ScalarField(g, std::move(out));
}

void write_field_csv(std::ostream& os, const ScalarField& f) {
  const Grid& g = f.grid();
  static const char* axes[] = {"x", "y", "z"};
  os << "index";
  for (int k = 0; k < g.dim(); ++k) os << ',' << axes[k];
  os << ",value\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Vec p = g.node_position(i);
    os << i;
    for (int k = 0; k < g.dim(); ++k) os << ',' << format_double(p[k]);
    os << ',' << format_double(f[i]) << '\n';
  }
}

namespace {

constexpr char kMagic[8] = {'H', 'D', 'F', 'L', 'D', '0', '1', '\0'};

template <typename T>
void put_le(std::ostream& os, T value) {
  static_assert(sizeof(T) == 8);
  std::uint64_t bits;
  std::memcpy(&bits, &value, 8);
  char buf[8];
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  os.write(buf, 8);
}

template <typename T>
T get_le(std::istream& is) {
  unsigned char buf[8];
  if (!is.read(reinterpret_cast<char*>(buf), 8)) throw Error("truncated field file");
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | buf[b];
  T value;
  std::memcpy(&value, &bits, 8);
  return value;
}

}  // namespace

void write_field_binary(std::ostream& os, const ScalarField& f) {
  const Grid& g = f.grid();
  os.write(kMagic, 8);
  put_le<std::uint64_t>(os, static_cast<std::uint64_t>(g.dim()));
  for (int k = 0; k < g.dim(); ++k) put_le<std::uint64_t>(os, static_cast<std::uint64_t>(g.counts()[k]));
  for (int k = 0; k < g.dim(); ++k) put_le<double>(os, g.origin()[k]);
  put_le<double>(os, g.spacing());
  for (double v : f.values()) put_le<double>(os, v);
}

ScalarField read_field_binary(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0) throw Error("not a field file (bad magic)");
  const auto dim = get_le<std::uint64_t>(is);
  if (dim < 1 || dim > 3) throw Error("field file has invalid dimension");
  Index counts{1, 1, 1};
  Vec origin{0, 0, 0};
  for (std::uint64_t k = 0; k < dim; ++k) counts[k] = static_cast<std::int64_t>(get_le<std::uint64_t>(is));
  for (std::uint64_t k = 0; k < dim; ++k) origin[k] = get_le<double>(is);
  const double h = get_le<double>(is);
  Grid g(static_cast<int>(dim), origin, h, counts);
  std::vector<double> values(g.node_count());
  for (double& v : values) v = get_le<double>(is);
  return ScalarField(g, std::move(values));
}

}  // namespace hdgrid
