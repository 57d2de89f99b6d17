#include "nkcp3/grid.hpp"

#include "nkcp3/error.hpp"

namespace nkcp3 {

std::string_view to_string(Chart chart) { return chart == Chart::kZero ? "0" : "inf"; }

void GridSpec::validate() const {
  if (samples < 9) throw Error(ErrorKind::kInvalidArgument, "grid needs at least 9 samples per side");
  if (!(half_width > 0.0)) throw Error(ErrorKind::kInvalidArgument, "grid half-width must be positive");
  if (charts.empty()) throw Error(ErrorKind::kInvalidArgument, "grid needs at least one chart");
}

Complex GridSpec::node(int ix, int iy) const {
  const Real step = 2.0 * half_width / (samples - 1);
  // Centred indexing keeps the middle node exactly at the origin.
  const Real mid = (samples - 1) / 2.0;
  return {step * (ix - mid), step * (iy - mid)};
}

std::vector<GridPoint> GridSpec::points() const {
  validate();
  std::vector<GridPoint> pts;
  pts.reserve(charts.size() * samples * samples);
  for (Chart c : charts)
    for (int iy = 0; iy < samples; ++iy)
      for (int ix = 0; ix < samples; ++ix) pts.push_back({c, node(ix, iy), ix, iy});
  return pts;
}

}  // namespace nkcp3
