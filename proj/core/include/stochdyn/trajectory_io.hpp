#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "stochdyn/dynamics.hpp"
#include "stochdyn/spectral.hpp"

namespace stochdyn {

struct LabeledTrajectory {
  std::string name;
  Trajectory trajectory;
};

// Nonempty, ordered set of trajectories sharing length and dimension.
class TrajectorySet {
 public:
  explicit TrajectorySet(std::vector<LabeledTrajectory> items);

  const std::vector<LabeledTrajectory>& items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  std::size_t dim() const noexcept {
    return items_.front().trajectory.matrix_dim();
  }
  std::size_t steps() const noexcept { return items_.front().trajectory.steps(); }

 private:
  std::vector<LabeledTrajectory> items_;
};

// "k,name,dim0,dim1,..." then one row per (step, trajectory), steps
// ascending, 12 significant digits, LF line endings.
std::string write_trajectory_csv(const TrajectorySet& set);

struct Viewport {
  double width_px = 600.0;
  double height_px = 600.0;
  // World window [world_min, world_max] on both axes.
  double world_min = -10.0;
  double world_max = 10.0;
};

// Trajectory colors in order; wraps after six.
inline constexpr const char* kTrajectoryColors[] = {
    "#0000ff", "#ff0000", "#00ff00", "#00ffff", "#ffff00", "#000000"};

// Standalone SVG 1.1 phase plot: both axes, the two eigenlines through the
// origin clipped to the world window, and for every trajectory a polyline
// plus one diamond marker per state. Output depends only on the inputs.
// Throws NotTwoDimensional.
std::string render_svg(const TrajectorySet& set, const Spectrum& spectrum,
                       const Viewport& viewport = {});

}  // namespace stochdyn
