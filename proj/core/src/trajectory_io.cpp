#include "stochdyn/trajectory_io.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <utility>

#include "stochdyn/error.hpp"
#include "stochdyn/format.hpp"

namespace stochdyn {

namespace {

constexpr int kCsvDigits = 12;
constexpr int kSvgDecimals = 3;
constexpr double kMarkerHalfSize = 4.0;

class Canvas {
 public:
  explicit Canvas(const Viewport& vp) : vp_(vp) {}

  double x(double world) const {
    return (world - vp_.world_min) / span() * vp_.width_px;
  }
  double y(double world) const {
    return vp_.height_px - (world - vp_.world_min) / span() * vp_.height_px;
  }

 private:
  double span() const { return vp_.world_max - vp_.world_min; }
  Viewport vp_;
};

std::string num(double v) { return format_fixed(v, kSvgDecimals); }

std::string line_element(const char* cls, double x1, double y1, double x2,
                         double y2, const char* stroke, double width) {
  return "<line class=\"" + std::string(cls) + "\" x1=\"" + num(x1) +
         "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
         "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) +
         "\"/>\n";
}

// Parameter range [lo, hi] of t with t*d inside the square window.
std::pair<double, double> clip_ray(double dx, double dy, double lo, double hi) {
  double t_lo = -INFINITY, t_hi = INFINITY;
  for (double d : {dx, dy}) {
    if (d == 0.0) {
      if (lo > 0.0 || hi < 0.0) return {1.0, 0.0};
      continue;
    }
    double a = lo / d, b = hi / d;
    if (a > b) std::swap(a, b);
    t_lo = std::max(t_lo, a);
    t_hi = std::min(t_hi, b);
  }
  return {t_lo, t_hi};
}

}  // namespace

TrajectorySet::TrajectorySet(std::vector<LabeledTrajectory> items)
    : items_(std::move(items)) {
  if (items_.empty())
    throw Error(ErrorCode::kInvalidArgument, "trajectory set is empty");
  for (const LabeledTrajectory& t : items_) {
    if (t.trajectory.size() != items_.front().trajectory.size() ||
        t.trajectory.matrix_dim() != items_.front().trajectory.matrix_dim())
      throw Error(ErrorCode::kDimensionMismatch,
                  "trajectory '" + t.name +
                      "' differs in length or dimension from '" +
                      items_.front().name + "'");
  }
}

std::string write_trajectory_csv(const TrajectorySet& set) {
  std::string out = "k,name";
  for (std::size_t d = 0; d < set.dim(); ++d) out += ",dim" + std::to_string(d);
  out += '\n';
  for (std::size_t k = 0; k <= set.steps(); ++k) {
    for (const LabeledTrajectory& t : set.items()) {
      out += std::to_string(k);
      out += ',';
      out += t.name;
      for (double v : t.trajectory[k].entries()) {
        out += ',';
        out += format_significant(v, kCsvDigits);
      }
      out += '\n';
    }
  }
  return out;
}

std::string render_svg(const TrajectorySet& set, const Spectrum& spectrum,
                       const Viewport& viewport) {
  if (set.dim() != 2 || spectrum.source_dim() != 2)
    throw Error(ErrorCode::kNotTwoDimensional,
                "phase plots need two-dimensional states, got dimension " +
                    std::to_string(set.dim() != 2 ? set.dim()
                                                  : spectrum.source_dim()));
  if (!(viewport.width_px > 0.0) || !(viewport.height_px > 0.0) ||
      !(viewport.world_max > viewport.world_min))
    throw Error(ErrorCode::kInvalidArgument, "degenerate viewport");

  const Canvas canvas(viewport);
  const double lo = viewport.world_min, hi = viewport.world_max;
  const std::string w = num(viewport.width_px), h = num(viewport.height_px);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
         w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + w +
         "\" height=\"" + h + "\" fill=\"#ffffff\"/>\n";

  out += line_element("axis", canvas.x(lo), canvas.y(0.0), canvas.x(hi),
                      canvas.y(0.0), "#808080", 1.0);
  out += line_element("axis", canvas.x(0.0), canvas.y(lo), canvas.x(0.0),
                      canvas.y(hi), "#808080", 1.0);

  for (const EigenPair& pair : spectrum.pairs()) {
    const double dx = pair.vector[0], dy = pair.vector[1];
    auto [t0, t1] = clip_ray(dx, dy, lo, hi);
    if (!(t0 < t1)) {
      // Window misses the origin; fall back to the +/-10 v segment.
      t0 = -10.0;
      t1 = 10.0;
    }
    out += line_element("eigenline", canvas.x(t0 * dx), canvas.y(t0 * dy),
                        canvas.x(t1 * dx), canvas.y(t1 * dy), "#000000", 1.0);
  }

  constexpr std::size_t kColorCount = std::size(kTrajectoryColors);
  for (std::size_t i = 0; i < set.size(); ++i) {
    const LabeledTrajectory& t = set.items()[i];
    const char* color = kTrajectoryColors[i % kColorCount];
    out += "<g class=\"series\" data-name=\"" + t.name + "\">\n";
    out += "<polyline class=\"trajectory\" fill=\"none\" stroke=\"" +
           std::string(color) + "\" stroke-width=\"1.500\" points=\"";
    for (std::size_t k = 0; k < t.trajectory.size(); ++k) {
      if (k > 0) out += ' ';
      out += num(canvas.x(t.trajectory[k][0])) + "," +
             num(canvas.y(t.trajectory[k][1]));
    }
    out += "\"/>\n";
    for (const Vec& x : t.trajectory.states()) {
      const double cx = canvas.x(x[0]), cy = canvas.y(x[1]);
      const double r = kMarkerHalfSize;
      out += "<polygon class=\"marker\" fill=\"" + std::string(color) +
             "\" stroke=\"#000000\" stroke-width=\"0.500\" points=\"" +
             num(cx) + "," + num(cy - r) + " " + num(cx + r) + "," + num(cy) +
             " " + num(cx) + "," + num(cy + r) + " " + num(cx - r) + "," +
             num(cy) + "\"/>\n";
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace stochdyn
