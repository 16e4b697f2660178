#pragma once

#include <string>

#include "relayrate/source_model.hpp"

namespace relayrate {

struct DiagramDocument {
  enum class Kind { Svg, Table };

  Kind kind = Kind::Table;
  std::string text;
};

// Renders the atom table.  With prefer_svg and exactly three users the
// result is a three-circle Venn diagram (SVG 1.1, 600x520 canvas, radius-150
// circles centred at (230,200), (370,200), (300,330), values to 4 decimal
// places).  Otherwise a plain-text table "subset<TAB>atom", one row per
// nonempty subset in (cardinality, mask) order.
DiagramDocument render_diagram(const SourceModel& model, bool prefer_svg);

}  // namespace relayrate
