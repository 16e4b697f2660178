#include "relayrate/diagram.hpp"

#include <cstdio>

#include "relayrate/imeasure.hpp"

namespace relayrate {

namespace {

std::string fmt4(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  std::string out = buf;
  if (out == "-0.0000") out.erase(0, 1);
  return out;
}

std::string table_document(const SourceModel& model) {
  const AtomTable atoms = atom_table(model);
  std::string out = "subset\tI_K\n";
  for (SubsetMask k : sorted_subsets(model.num_users(), false, true)) {
    out += subset_to_string(k);
    out += '\t';
    out += fmt4(atoms.at(k));
    out += '\n';
  }
  return out;
}

struct Label {
  SubsetMask subset;
  int x, y;
};

std::string venn_document(const SourceModel& model) {
  const AtomTable atoms = atom_table(model);

  // Region label anchors, chosen inside the seven overlap regions of the
  // fixed circle layout.
  static constexpr Label kLabels[] = {
      {0b001, 165, 175}, {0b010, 435, 175}, {0b100, 300, 425},
      {0b011, 300, 150}, {0b101, 232, 292}, {0b110, 368, 292},
      {0b111, 300, 245},
  };

  std::string svg;
  svg +=
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      "width=\"600\" height=\"520\" viewBox=\"0 0 600 520\">\n"
      "  <rect width=\"600\" height=\"520\" fill=\"white\"/>\n"
      "  <circle cx=\"230\" cy=\"200\" r=\"150\" fill=\"none\" "
      "stroke=\"black\" stroke-width=\"1.5\"/>\n"
      "  <circle cx=\"370\" cy=\"200\" r=\"150\" fill=\"none\" "
      "stroke=\"black\" stroke-width=\"1.5\"/>\n"
      "  <circle cx=\"300\" cy=\"330\" r=\"150\" fill=\"none\" "
      "stroke=\"black\" stroke-width=\"1.5\"/>\n"
      "  <text x=\"95\" y=\"70\" font-family=\"sans-serif\" "
      "font-size=\"18\">W1</text>\n"
      "  <text x=\"485\" y=\"70\" font-family=\"sans-serif\" "
      "font-size=\"18\">W2</text>\n"
      "  <text x=\"290\" y=\"505\" font-family=\"sans-serif\" "
      "font-size=\"18\">W3</text>\n";
  char buf[192];
  for (const Label& label : kLabels) {
    std::snprintf(buf, sizeof(buf),
                  "  <text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" "
                  "font-size=\"14\" text-anchor=\"middle\">%s</text>\n",
                  label.x, label.y, fmt4(atoms.at(label.subset)).c_str());
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

DiagramDocument render_diagram(const SourceModel& model, bool prefer_svg) {
  if (prefer_svg && model.num_users() == 3) {
    return DiagramDocument{DiagramDocument::Kind::Svg, venn_document(model)};
  }
  return DiagramDocument{DiagramDocument::Kind::Table, table_document(model)};
}

}  // namespace relayrate
