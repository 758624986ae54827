#include "prkit/render.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <memory>
#include <sstream>

#include "prkit/error.hpp"
#include "prkit/roots.hpp"
#include "prkit/sweep.hpp"

namespace prkit {

namespace {

const char* const kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2", "#17becf", "#bcbd22"};
constexpr int kMargin = 20;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// World-to-pixel map with y pointing up.
struct Frame {
  double x0, x1, y0, y1;
  int w, h;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * w; }
  double py(double y) const { return kMargin + (y1 - y) / (y1 - y0) * h; }
};

Frame make_frame(double x0, double x1, double y0, double y1, int width) {
  int h = std::max(1, static_cast<int>(width * (y1 - y0) / (x1 - x0) + 0.5));
  return {x0, x1, y0, y1, width, h};
}

void open_svg(std::ostringstream& o, const Frame& f) {
  const int W = f.w + 2 * kMargin, H = f.h + 2 * kMargin;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
    << ' ' << H << "\">\n";
  o << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  o << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << f.w << "\" height=\"" << f.h
    << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
}

void draw_embedded(std::ostringstream& o, const Frame& f, const EmbeddedGraph& g, const char* colour, bool dashed) {
  o << "<g id=\"embedded\" stroke=\"" << colour << "\" stroke-width=\"1.5\" fill=\"none\""
    << (dashed ? " stroke-dasharray=\"6 4\"" : "") << ">\n";
  for (auto& e : g.edges) {
    o << "<polyline points=\"";
    bool first = true;
    for (auto& [x, y] : g.polyline(e)) {
      o << (first ? "" : " ") << num(f.px(x.get_d())) << ',' << num(f.py(y.get_d()));
      first = false;
    }
    o << "\"/>\n";
  }
  o << "</g>\n<g id=\"embedded-vertices\" fill=\"" << colour << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (auto& v : g.vertices) {
    const double X = f.px(v.x.get_d()), Y = f.py(v.y.get_d());
    o << "<circle cx=\"" << num(X) << "\" cy=\"" << num(Y) << "\" r=\"3\"/>";
    o << "<text x=\"" << num(X + 5) << "\" y=\"" << num(Y - 5) << "\">" << escape(v.id) << "</text>\n";
  }
  o << "</g>\n";
}

double provenance_y(const VVertex& v, double fallback) {
  const auto& p = v.provenance;
  if (!p.is_object() || !p.contains("points") || p["points"].empty()) return fallback;
  double s = 0;
  int n = 0;
  for (auto& pt : p["points"]) {
    if (!pt.contains("y")) continue;
    const Rational lo(pt["y"]["lo"].get<std::string>()), hi(pt["y"]["hi"].get<std::string>());
    s += (lo.get_d() + hi.get_d()) / 2;
    ++n;
  }
  return n ? s / n : fallback;
}

}  // namespace

std::string render_svg(const DomainSpec& d, const VDigraph* overlay, const EmbeddedGraph* embedded,
                       const SvgOptions& opt) {
  if (opt.width < 16 || opt.columns < 2) throw Error("render", "width and column count are too small");
  const Frame fr = make_frame(d.box.xmin.get_d(), d.box.xmax.get_d(), d.box.ymin.get_d(), d.box.ymax.get_d(), opt.width);
  std::ostringstream o;
  open_svg(o, fr);
  const Rational dx = (d.box.xmax - d.box.xmin) / opt.columns;
  auto column_x = [&](int i) {
    Rational t = d.box.xmin + dx * i + dx / 2;
    t.canonicalize();
    return t;
  };
  const double colw = static_cast<double>(fr.w) / opt.columns;

  if (opt.shade) {
    std::unique_ptr<Sweep> sw;
    try {
      if (validate_domain(d).ok()) sw = std::make_unique<Sweep>(d);
    } catch (const Error&) {
      sw.reset();
    }
    if (sw) {
      o << "<g id=\"component\" fill=\"#dddddd\" stroke=\"none\">\n";
      for (int i = 0; i < opt.columns; ++i) {
        SliceProfile sp = sw->slice(column_x(i));
        for (auto& iv : sp.intervals) {
          if (!iv.member) continue;
          iv.lo.refine_bits(24);
          iv.hi.refine_bits(24);
          const double top = fr.py(iv.hi.approx()), bot = fr.py(iv.lo.approx());
          o << "<rect x=\"" << num(kMargin + i * colw) << "\" y=\"" << num(top) << "\" width=\"" << num(colw)
            << "\" height=\"" << num(bot - top) << "\"/>\n";
        }
      }
      o << "</g>\n";
    }
  }

  const Interval window{d.box.ymin, d.box.ymax};
  for (size_t c = 0; c < d.curves.size(); ++c) {
    o << "<g id=\"curve-" << escape(d.curves[c].id) << "\" fill=\"" << kPalette[c % std::size(kPalette)] << "\">\n";
    for (int i = 0; i < opt.columns; ++i) {
      const Rational t = column_x(i);
      UPoly u = d.curves[c].f.at_x(t);
      if (u.is_zero()) continue;
      for (auto& r : isolate_real_roots(u, window)) {
        r.value.refine_bits(24);
        o << "<circle cx=\"" << num(fr.px(t.get_d())) << "\" cy=\"" << num(fr.py(r.value.approx()))
          << "\" r=\"1.2\"/>\n";
      }
    }
    o << "</g>\n";
  }

  if (embedded) draw_embedded(o, fr, *embedded, "#1f3f9f", true);

  if (overlay) {
    const double ymid = (fr.y0 + fr.y1) / 2;
    std::vector<std::pair<double, double>> at;
    for (auto& v : overlay->vertices)
      at.push_back({fr.px((v.value.lo.get_d() + v.value.hi.get_d()) / 2), fr.py(provenance_y(v, ymid))});
    o << "<g id=\"graph\" stroke=\"#ff7f0e\" stroke-width=\"2\" fill=\"none\">\n";
    for (auto& e : overlay->edges)
      o << "<line x1=\"" << num(at[e.src].first) << "\" y1=\"" << num(at[e.src].second) << "\" x2=\""
        << num(at[e.dst].first) << "\" y2=\"" << num(at[e.dst].second) << "\"/>\n";
    o << "</g>\n<g id=\"graph-vertices\" fill=\"black\" font-family=\"sans-serif\" font-size=\"11\">\n";
    for (size_t v = 0; v < at.size(); ++v) {
      o << "<circle cx=\"" << num(at[v].first) << "\" cy=\"" << num(at[v].second) << "\" r=\"4\"/>";
      o << "<text x=\"" << num(at[v].first + 6) << "\" y=\"" << num(at[v].second + 12) << "\">"
        << escape(overlay->vertices[v].id) << "</text>\n";
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string render_embedded_svg(const EmbeddedGraph& g, const SvgOptions& opt) {
  if (g.vertices.empty()) throw Error("render", "empty graph");
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (auto& e : g.edges)
    for (auto& [x, y] : g.polyline(e)) {
      x0 = std::min(x0, x.get_d()), x1 = std::max(x1, x.get_d());
      y0 = std::min(y0, y.get_d()), y1 = std::max(y1, y.get_d());
    }
  for (auto& v : g.vertices) {
    x0 = std::min(x0, v.x.get_d()), x1 = std::max(x1, v.x.get_d());
    y0 = std::min(y0, v.y.get_d()), y1 = std::max(y1, v.y.get_d());
  }
  const double pad = 0.1 * std::max({x1 - x0, y1 - y0, 1.0});
  const Frame fr = make_frame(x0 - pad, x1 + pad, y0 - pad, y1 + pad, opt.width);
  std::ostringstream o;
  open_svg(o, fr);
  draw_embedded(o, fr, g, "#1f3f9f", false);
  o << "</svg>\n";
  return o.str();
}

}  // namespace prkit
