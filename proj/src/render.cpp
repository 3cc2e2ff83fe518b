#include "decker/render.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

namespace decker {

namespace {

constexpr double kMargin = 40;

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v + 0.0);
  return buf;
}

struct Chart {
  double size;
  int edges;
  double x(const KnotParam& p) const { return kMargin + size * (p.edge + p.u.to_double()) / edges; }
  double y(const Direction& phi) const { return kMargin + size * (1 - phi.turns()); }
};

// Direction of the chord at c; at a cusp end the chord vanishes and the
// direction is constant along the piece, so the midpoint stands in.
Direction sample_direction(const EdgeComplex& k, const Piece& p, const Scalar& c) {
  Algebraic dx = k.x_at(p.edges[1], c) - k.x_at(p.edges[0], c);
  Algebraic dy = k.y_at(p.edges[1], c) - k.y_at(p.edges[0], c);
  if (dx.sign() == 0 && dy.sign() == 0) return piece_direction(k, p, Algebraic((p.from + p.to) / 2));
  return piece_direction(k, p, c);
}

std::string strand_path(const EdgeComplex& k, const Chart& ch, const DoubleCurve& c, bool over, int samples) {
  std::vector<std::pair<double, double>> pts;
  std::ostringstream d;
  for (const auto& p : c.pieces) {
    int e = p.edges[static_cast<size_t>(over ? p.over : 1 - p.over)];
    for (int j = 0; j <= samples; ++j) {
      Scalar h = p.from + (p.to - p.from) * Scalar(j, samples);
      double x = ch.x(k.param_at(e, h)), y = ch.y(sample_direction(k, p, h));
      if (!pts.empty() && pts.back() == std::make_pair(x, y)) continue;
      bool jump = !pts.empty() && (std::abs(x - pts.back().first) > ch.size / 2 || std::abs(y - pts.back().second) > ch.size / 2);
      d << (pts.empty() || jump ? (pts.empty() ? "M" : " M") : " L") << num(x) << ' ' << num(y);
      pts.emplace_back(x, y);
    }
  }
  return d.str();
}

}  // namespace

std::string render_svg(const AbstractDiagram& d, const RenderOptions& opt) {
  const double size = opt.size;
  const double full = size + 2 * kMargin;
  EdgeComplex k = d.complex();
  Chart ch{size, std::max(k.edge_count(), 1)};
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(full) << "\" height=\"" << num(full)
    << "\" viewBox=\"0 0 " << num(full) << ' ' << num(full) << "\">\n";
  o << "<g id=\"axes\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\">\n"
    << "<rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(size) << "\" height=\""
    << num(size) << "\"/>\n</g>\n";
  o << "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"14\" fill=\"#444444\">\n"
    << "<text x=\"" << num(kMargin + size / 2) << "\" y=\"" << num(full - 12) << "\">s</text>\n"
    << "<text x=\"12\" y=\"" << num(kMargin + size / 2) << "\">phi</text>\n</g>\n";

  o << "<g id=\"strands\" fill=\"none\" stroke-width=\"1.5\">\n";
  for (size_t i = 0; i < d.curves.size(); ++i)
    for (bool over : {true, false})
      o << "<path class=\"" << (over ? "over" : "under") << "\" data-curve=\"" << i << "\" stroke=\""
        << (over ? opt.over_color : opt.under_color) << '"' << (over ? "" : " stroke-dasharray=\"6 4\"") << " d=\""
        << strand_path(k, ch, d.curves[i], over, opt.samples_per_piece) << "\"/>\n";
  o << "</g>\n";

  o << "<g id=\"cusps\" fill=\"" << opt.cusp_color << "\">\n";
  for (const auto& c : d.cusps) {
    KnotParam p{k.incident(c.vertex).back(), Algebraic(0)};
    for (int e : k.incident(c.vertex))
      if (k.edge(e).tail == c.vertex) p.edge = e;
    o << "<circle cx=\"" << num(ch.x(p)) << "\" cy=\"" << num(ch.y(c.direction)) << "\" r=\"4\"/>\n";
  }
  o << "</g>\n";

  o << "<g id=\"triples\" fill=\"" << opt.triple_color << "\">\n";
  for (const auto& t : d.triples)
    for (const auto& pre : t.preimages) {
      double x = ch.x(pre.s), y = ch.y(t.direction);
      o << "<polygon data-level=\"" << pre.level << "\" points=\"" << num(x) << ',' << num(y - 5) << ' '
        << num(x - 4.5) << ',' << num(y + 3.5) << ' ' << num(x + 4.5) << ',' << num(y + 3.5) << "\"/>\n";
    }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace decker
