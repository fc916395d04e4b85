#include "relaynet/geometry.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace relaynet {

namespace {

constexpr double kTol = 1e-9;
const double kSqrt3 = std::numbers::sqrt3;

}  // namespace

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

CellLayout::CellLayout(double d_b, std::vector<Point> relays, double grid_step)
    : d_b_(d_b), relays_(std::move(relays)), grid_step_(grid_step) {
  if (!(d_b > 0.0) || !std::isfinite(d_b)) throw std::invalid_argument("cell radius must be positive");
  if (!(grid_step > 0.0)) throw GridError("grid step must be positive");
  for (std::size_t k = 0; k < relays_.size(); ++k) {
    if (!in_sector(relays_[k], d_b)) {
      throw std::invalid_argument("relay " + std::to_string(k) + " lies outside sector 1");
    }
  }
}

double CellLayout::sector_area() const { return 0.5 * kSqrt3 * d_b_ * d_b_; }

CellLayout CellLayout::with_relays(std::vector<Point> relays) const {
  return CellLayout(d_b_, std::move(relays), grid_step_);
}

bool in_hexagon(const Point& p, double d_b, const Point& center) {
  double x = std::abs(p.x - center.x);
  double y = std::abs(p.y - center.y);
  double tol = kTol * d_b;
  return y <= 0.5 * kSqrt3 * d_b + tol && kSqrt3 * x + y <= kSqrt3 * d_b + tol;
}

bool in_sector(const Point& p, double d_b) {
  return in_hexagon(p, d_b) && kSqrt3 * p.x + kTol * d_b >= std::abs(p.y);
}

BaseStation serving_base_station(const Point& relative, double d_b) {
  constexpr double third = 2.0 * std::numbers::pi / 3.0;
  double angle = std::atan2(relative.y, relative.x);
  long k = std::lround(angle / third);
  double a = static_cast<double>(k) * third;
  return {{d_b * std::cos(a), d_b * std::sin(a)}, a + std::numbers::pi};
}

std::vector<UserPos> sector_grid(const CellLayout& layout) {
  double d = layout.d_b();
  double s = layout.grid_step();
  if (s > d) throw GridError("grid step exceeds the cell radius");
  std::vector<UserPos> out;
  int nx = static_cast<int>(std::ceil(d / s));
  int ny = static_cast<int>(std::ceil(0.5 * kSqrt3 * d / s));
  for (int j = -ny; j < ny; ++j) {
    double y = (j + 0.5) * s;
    for (int i = 0; i < nx; ++i) {
      Point p{(i + 0.5) * s, y};
      if (in_sector(p, d)) out.push_back(p);
    }
  }
  if (out.empty()) throw GridError("grid contains no sector points");
  return out;
}

std::vector<UserPos> hexagon_grid(double d_b, double step, const Point& center) {
  if (!(step > 0.0) || step > d_b) throw GridError("grid step must lie in (0, d_b]");
  std::vector<UserPos> out;
  int nx = static_cast<int>(std::ceil(d_b / step));
  int ny = static_cast<int>(std::ceil(0.5 * kSqrt3 * d_b / step));
  for (int j = -ny; j < ny; ++j) {
    for (int i = -nx; i < nx; ++i) {
      Point p{center.x + (i + 0.5) * step, center.y + (j + 0.5) * step};
      if (in_hexagon(p, d_b, center)) out.push_back(p);
    }
  }
  return out;
}

std::vector<Point> neighbor_centers(double d_b) {
  std::vector<Point> out;
  double r = kSqrt3 * d_b;
  for (int k = 0; k < 6; ++k) {
    double a = (30.0 + 60.0 * k) * std::numbers::pi / 180.0;
    out.push_back({r * std::cos(a), r * std::sin(a)});
  }
  return out;
}

std::vector<NeighborCell> neighbor_cells(const CellLayout& layout) {
  std::vector<NeighborCell> out;
  for (const auto& c : neighbor_centers(layout.d_b())) {
    out.push_back({c, hexagon_grid(layout.d_b(), layout.grid_step(), c)});
  }
  return out;
}

int serving_assignment(const UserPos&, const CellLayout& layout,
                       const std::function<double(const Point& relay)>& relay_path_energy) {
  int best = kNoRelay;
  double best_e = 0.0;
  for (int k = 0; k < layout.n_r(); ++k) {
    double e = relay_path_energy(layout.relays()[static_cast<std::size_t>(k)]);
    if (best == kNoRelay || e < best_e * (1.0 - 1e-12)) {
      best = k;
      best_e = e;
    }
  }
  return best;
}

}  // namespace relaynet
