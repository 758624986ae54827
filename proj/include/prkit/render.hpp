#pragma once

#include <string>

#include "prkit/domain.hpp"
#include "prkit/vdigraph.hpp"

namespace prkit {

struct SvgOptions {
  /// Width of the plot area in pixels; the height follows the box aspect.
  int width = 640;
  /// Columns sampled for the per-column root plot.
  int columns = 320;
  /// Shade the fibre intervals of the basepoint component (needs a valid domain).
  bool shade = true;
};

/// Static SVG: curve roots per column, optional shading of the component,
/// optional PR graph overlay and optional embedded graph (dashed).
std::string render_svg(const DomainSpec& d, const VDigraph* overlay = nullptr,
                       const EmbeddedGraph* embedded = nullptr, const SvgOptions& opt = {});

/// SVG of an embedded graph alone, framed by its bounding box.
std::string render_embedded_svg(const EmbeddedGraph& g, const SvgOptions& opt = {});

}  // namespace prkit
