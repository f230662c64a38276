#include "sharkteeth/render.hpp"

#include <map>
#include <sstream>

#include "sharkteeth/error.hpp"
#include "sharkteeth/maps.hpp"

namespace shark {

namespace {

constexpr int kDigits = 9;

std::string fmt(const Rational& r) { return to_decimal(r, kDigits); }

std::string carrier_tag(const Carrier& c) { return carrier_name(c); }

}  // namespace

std::string render(const Space& space, const RenderSpec& spec) {
  BigInt total = 0;
  for (const Layer& l : spec.layers) total += l.subset.segment_count();
  if (total == 0) fail(ErrorCode::InvalidArgument, "nothing to render: every layer is empty");
  if (total > spec.max_segments)
    fail(ErrorCode::ResourceLimit, "render needs " + to_string(total) + " polylines (limit " +
                                       std::to_string(spec.max_segments) + ")");

  const Rational half(1, 2);
  std::ostringstream out;
  int height = spec.width_px * 54 / 104;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width_px << "\" height=\""
      << height << "\" viewBox=\"-0.02 -0.02 1.04 0.54\">\n"
      << "<title>" << spec.title << "</title>\n"
      << "<style type=\"text/css\">polyline{fill:none;stroke-linejoin:round}"
      << ".bone{stroke:#000;stroke-width:0.003}.row{stroke:#1f4e9a;stroke-width:0.0012}"
      << ".overlay{stroke:#c0392b;stroke-width:0.002}</style>\n";

  std::map<std::string, std::size_t> counters;
  for (std::size_t li = 0; li < spec.layers.size(); ++li) {
    const Layer& layer = spec.layers[li];
    out << "<g id=\"layer-" << li << "\"" << (layer.cls.empty() ? "" : " class=\"" + layer.cls + "\"") << ">\n";
    for (const Segment& s : layer.subset.segments(spec.max_segments)) {
      std::string tag = carrier_tag(s.carrier);
      std::string cls = !layer.cls.empty() ? layer.cls : (s.carrier.is_bone() ? "bone" : "row");
      std::string id = "seg-" + tag + "-";
      if (layer.piece) id += "piece" + std::to_string(*layer.piece) + "-";
      id += std::to_string(counters[tag]++);
      if (!layer.role.empty()) id += "-" + layer.role;
      out << "<polyline id=\"" << id << "\" class=\"" << cls << "\" points=\"";
      std::vector<PlanePoint> pts = polyline_of(space, s);
      for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) out << ' ';
        out << fmt(pts[i].x) << ',' << fmt(Rational(half - pts[i].y));
      }
      out << "\"/>\n";
    }
    out << "</g>\n";
  }
  out << "</svg>\n";
  return out.str();
}

RenderSpec figure_truncation(const Space& space, std::size_t depth) {
  RenderSpec spec;
  spec.title = "M truncated after generation " + std::to_string(depth);
  spec.layers.push_back(Layer{truncate_M(space, depth), "", std::nullopt, ""});
  return spec;
}

RenderSpec figure_tooth(const Space& space, std::size_t i, const BigInt& j, std::optional<BigInt> row) {
  const Generation& g = space.generation(i);
  BigInt k = row.value_or(g.first_row);
  if (k < g.first_row || k > g.last_row())
    fail(ErrorCode::InvalidArgument, "row " + to_string(k) + " is not in generation " + std::to_string(i));
  BigInt teeth = pow2(static_cast<unsigned long>(g.tooth_exp));
  if (j < 0 || j >= teeth) fail(ErrorCode::InvalidArgument, "tooth index out of range");
  BigInt pieces = g.pieces();
  RenderSpec spec;
  spec.title = "tooth " + to_string(j) + " of row " + to_string(k) + " and its image";
  BigInt den = teeth * pieces;
  for (BigInt p = 0; p < pieces; ++p) {
    Segment src{Carrier{k}, make_rational(BigInt(j * pieces + p), den), make_rational(BigInt(j * pieces + p + 1), den)};
    auto idx = static_cast<std::size_t>(p.get_ui());
    spec.layers.push_back(Layer{subset_of(space, {src}), "row", idx, "source"});
    spec.layers.push_back(Layer{apply_segment(space, MapId::F1, src), "overlay", idx, "image"});
  }
  return spec;
}

}  // namespace shark
