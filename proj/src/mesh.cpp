#include "tepml/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "tepml/errors.hpp"

namespace tepml {

namespace {

// Cell-count coordinate outside B1: cell sizes grow linearly with the
// distance t from the B1 surface, s(t) = min(h_max, h + (g - 1) t), so
// consecutive cells grow by about the factor g.
struct LayerGrading {
  double h, h_max, rate;

  double t_cap() const { return rate > 0.0 ? (h_max - h) / rate : 0.0; }
  double count(double t) const {
    if (rate <= 0.0 || h_max <= h) return t / h;
    const double tc = t_cap();
    if (t <= tc) return std::log((h + rate * t) / h) / rate;
    return std::log(h_max / h) / rate + (t - tc) / h_max;
  }
  double inverse(double n) const {
    if (rate <= 0.0 || h_max <= h) return n * h;
    const double nc = std::log(h_max / h) / rate;
    if (n <= nc) return h * std::expm1(rate * n) / rate;
    return t_cap() + (n - nc) * h_max;
  }
};

std::vector<double> axis_lines(std::vector<double> breaks, double lo, double hi, double inner_half,
                               double h_inner, const LayerGrading& layer) {
  breaks.push_back(lo);
  breaks.push_back(hi);
  std::vector<double> b;
  for (double x : breaks)
    if (x >= lo && x <= hi) b.push_back(x);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end(), [](double a, double c) { return std::abs(a - c) < 1e-12; }),
          b.end());
  std::vector<double> out{b.front()};
  for (std::size_t i = 0; i + 1 < b.size(); ++i) {
    const double a = b[i], c = b[i + 1];
    const bool inner = std::abs(a) <= inner_half + 1e-12 && std::abs(c) <= inner_half + 1e-12;
    if (inner) {
      const int n = std::max(1, int(std::ceil((c - a) / h_inner - 1e-9)));
      for (int k = 1; k < n; ++k) out.push_back(a + (c - a) * k / n);
    } else {
      // segments outside B1 lie on one side of it
      const double sign = a + c > 0.0 ? 1.0 : -1.0;
      const double na = layer.count(std::max(0.0, std::abs(a) - inner_half));
      const double nc = layer.count(std::max(0.0, std::abs(c) - inner_half));
      const int n = std::max(1, int(std::ceil(std::abs(nc - na) - 1e-9)));
      for (int k = 1; k < n; ++k) out.push_back(sign * (inner_half + layer.inverse(na + (nc - na) * k / n)));
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace

int HexMesh::node_at(int i, int j, int k) const {
  const auto n = grid_size();
  if (i < 0 || j < 0 || k < 0 || i >= n[0] || j >= n[1] || k >= n[2]) return -1;
  return grid_to_node[std::size_t(i) + std::size_t(n[0]) * (std::size_t(j) + std::size_t(n[1]) * k)];
}

int HexMesh::cell_at(int i, int j, int k) const {
  const auto n = grid_size();
  if (i < 0 || j < 0 || k < 0 || i + 1 >= n[0] || j + 1 >= n[1] || k + 1 >= n[2]) return -1;
  return grid_to_cell[std::size_t(i) + std::size_t(n[0] - 1) * (std::size_t(j) + std::size_t(n[1] - 1) * k)];
}

Vec3 HexMesh::cell_lower(std::size_t c) const {
  const auto& o = cell_origin[c];
  return {lines[0][o[0]], lines[1][o[1]], lines[2][o[2]]};
}

Vec3 HexMesh::cell_upper(std::size_t c) const {
  const auto& o = cell_origin[c];
  return {lines[0][o[0] + 1], lines[1][o[1] + 1], lines[2][o[2] + 1]};
}

bool HexMesh::cell_in_b1(std::size_t c) const {
  const Vec3 m = cell_center(c);
  for (int j = 0; j < 3; ++j)
    if (std::abs(m[j]) > l[j]) return false;
  return true;
}

HexMesh build_mesh(const PmlProfile& profile, const Axes& obstacle, const MeshOptions& opt) {
  if (!(opt.h_target > 0.0)) throw InvalidParameter("h_target must be positive");
  if (opt.h_layer < 0.0) throw InvalidParameter("h_layer must not be negative");
  if (!(opt.layer_growth >= 1.0)) throw InvalidParameter("layer_growth must be at least 1");
  const LayerGrading grading{opt.h_target, std::max(opt.h_target, opt.h_layer), opt.layer_growth - 1.0};
  const Axes& l = profile.l();
  const bool with_obstacle = opt.domain == MeshDomain::kOmega2;
  if (with_obstacle)
    for (int j = 0; j < 3; ++j)
      if (!(obstacle[j] > 0.0 && obstacle[j] < l[j]))
        throw InvalidGeometry("obstacle must lie strictly inside B1");

  HexMesh m;
  m.domain = opt.domain;
  m.symmetry = opt.symmetry;
  m.obstacle = obstacle;
  m.l = l;
  m.outer = profile.outer();
  const bool octant = opt.symmetry == Symmetry::kOctant;
  for (int j = 0; j < 3; ++j) {
    const double L = m.outer[j];
    std::vector<double> br{0.0, l[j], -l[j], profile.lbar()[j], -profile.lbar()[j]};
    if (with_obstacle) {
      br.push_back(obstacle[j]);
      br.push_back(-obstacle[j]);
    }
    m.lines[j] = axis_lines(br, octant ? 0.0 : -L, L, l[j], opt.h_target, grading);
  }
  for (int j = 0; j < 3; ++j)
    for (std::size_t i = 0; i + 1 < m.lines[j].size(); ++i)
      m.h = std::max(m.h, m.lines[j][i + 1] - m.lines[j][i]);

  const auto n = m.grid_size();
  auto inside_box = [](const Vec3& x, const Axes& b) {
    return std::abs(x[0]) < b[0] && std::abs(x[1]) < b[1] && std::abs(x[2]) < b[2];
  };
  m.grid_to_node.assign(std::size_t(n[0]) * n[1] * n[2], -1);
  m.grid_to_cell.assign(std::size_t(n[0] - 1) * (n[1] - 1) * (n[2] - 1), -1);
  auto gid = [&](int i, int j, int k) {
    return std::size_t(i) + std::size_t(n[0]) * (std::size_t(j) + std::size_t(n[1]) * k);
  };
  for (int k = 0; k + 1 < n[2]; ++k)
    for (int j = 0; j + 1 < n[1]; ++j)
      for (int i = 0; i + 1 < n[0]; ++i) {
        const Vec3 c(0.5 * (m.lines[0][i] + m.lines[0][i + 1]), 0.5 * (m.lines[1][j] + m.lines[1][j + 1]),
                     0.5 * (m.lines[2][k] + m.lines[2][k + 1]));
        const bool active = with_obstacle ? !inside_box(c, obstacle) : !inside_box(c, l);
        if (!active) continue;
        std::array<int, 8> cell;
        for (int v = 0; v < 8; ++v) {
          const std::size_t g = gid(i + (v & 1), j + ((v >> 1) & 1), k + ((v >> 2) & 1));
          if (m.grid_to_node[g] < 0) m.grid_to_node[g] = 0;  // mark, numbered below
          cell[v] = int(g);
        }
        m.grid_to_cell[std::size_t(i) + std::size_t(n[0] - 1) * (std::size_t(j) + std::size_t(n[1] - 1) * k)] =
            int(m.cells.size());
        m.cells.push_back(cell);
        m.cell_origin.push_back({i, j, k});
      }
  // number nodes in grid order
  int next = 0;
  for (int k = 0; k < n[2]; ++k)
    for (int j = 0; j < n[1]; ++j)
      for (int i = 0; i < n[0]; ++i) {
        const std::size_t g = gid(i, j, k);
        if (m.grid_to_node[g] < 0) continue;
        m.grid_to_node[g] = next++;
        m.nodes.emplace_back(m.lines[0][i], m.lines[1][j], m.lines[2][k]);
        m.node_index.push_back({i, j, k});
      }
  for (auto& cell : m.cells)
    for (auto& v : cell) v = m.grid_to_node[std::size_t(v)];

  auto on_box_surface = [](const Vec3& x, const Axes& b) {
    bool on = false;
    for (int j = 0; j < 3; ++j) {
      const double e = std::abs(x[j]) - b[j];
      if (e > 1e-12) return false;
      if (std::abs(e) <= 1e-12) on = true;
    }
    return on;
  };
  m.tags.assign(m.nodes.size(), 0);
  for (std::size_t v = 0; v < m.nodes.size(); ++v) {
    const Vec3& x = m.nodes[v];
    std::uint8_t t = 0;
    if (with_obstacle && on_box_surface(x, obstacle)) t |= kTagObstacle;
    if (on_box_surface(x, m.outer)) t |= kTagOuter;
    if (on_box_surface(x, l)) t |= kTagInterface;
    if (octant)
      for (int j = 0; j < 3; ++j)
        if (x[j] == 0.0) t |= std::uint8_t(kTagSymmetry0 << j);
    m.tags[v] = t;
  }
  return m;
}

}  // namespace tepml
