#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace relaynet {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

using UserPos = Point;

inline bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }

double distance(const Point& a, const Point& b);

class GridError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Hexagon with circumradius d_b centered at the origin, vertices at multiples of 60 degrees.
// Sector 1 is the rhombus served by the base station at (d_b, 0).
class CellLayout {
 public:
  CellLayout(double d_b, std::vector<Point> relays, double grid_step);

  double d_b() const { return d_b_; }
  const std::vector<Point>& relays() const { return relays_; }
  int n_r() const { return static_cast<int>(relays_.size()); }
  double grid_step() const { return grid_step_; }
  double sector_area() const;
  Point bs_position() const { return {d_b_, 0.0}; }

  CellLayout with_relays(std::vector<Point> relays) const;

 private:
  double d_b_;
  std::vector<Point> relays_;
  double grid_step_;
};

bool in_hexagon(const Point& p, double d_b, const Point& center = {});
bool in_sector(const Point& p, double d_b);

// Base station serving a point of the cell centered at the origin, with its boresight.
struct BaseStation {
  Point position;
  double boresight = 0.0;  // radians
};
BaseStation serving_base_station(const Point& relative, double d_b);

std::vector<UserPos> sector_grid(const CellLayout& layout);
std::vector<UserPos> hexagon_grid(double d_b, double step, const Point& center = {});

struct NeighborCell {
  Point center;
  std::vector<UserPos> grid;
};
std::vector<Point> neighbor_centers(double d_b);
std::vector<NeighborCell> neighbor_cells(const CellLayout& layout);

inline constexpr int kNoRelay = -1;

// Index of the relay with the smallest relay-path energy, lowest index on ties.
int serving_assignment(const UserPos& u, const CellLayout& layout,
                       const std::function<double(const Point& relay)>& relay_path_energy);

}  // namespace relaynet
