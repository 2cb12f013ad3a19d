#include "trihom/dataio.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace trihom {

namespace {

struct Frame {
  int qmin, qmax, amin, amax;
  int cols() const { return (qmax - qmin) / 2 + 1; }
  int rows() const { return (amax - amin) / 2 + 1; }
};

Frame frame_of(const TrigradedDims& h) {
  Frame f{0, 0, 0, 0};
  bool first = true;
  for (auto& [x, d] : h.dims) {
    if (first) f = {x.q, x.q, x.a, x.a}, first = false;
    f.qmin = std::min(f.qmin, x.q), f.qmax = std::max(f.qmax, x.q);
    f.amin = std::min(f.amin, x.a), f.amax = std::max(f.amax, x.a);
  }
  return f;
}

// dims of one Delta-slice by (q, a)
std::map<std::pair<int, int>, long> slice(const TrigradedDims& h, int delta) {
  std::map<std::pair<int, int>, long> s;
  for (auto& [x, d] : h.dims)
    if (x.delta() == delta) s[{x.q, x.a}] += d;
  return s;
}

// d_1 and d_-1 survivors; they coincide when S = 0
std::vector<std::pair<int, int>> circles(std::optional<int> S, int delta) {
  if (!S || delta != -*S) return {};
  return {{*S, -*S}, {-*S, -*S}};
}

std::string ascii(const TrigradedDims& h, std::optional<int> S) {
  std::ostringstream os;
  Frame f = frame_of(h);
  const int w = 5;
  bool first = true;
  for (int delta : h.delta_support()) {
    if (!first) os << "\n";
    first = false;
    auto sl = slice(h, delta);
    auto marks = circles(S, delta);
    os << "Delta = " << delta << "\n";
    os << std::setw(w + 2) << "a\\q";
    for (int q = f.qmin; q <= f.qmax; q += 2) os << std::setw(w) << q;
    os << "\n";
    for (int a = f.amax; a >= f.amin; a -= 2) {
      os << std::setw(w + 2) << a;
      for (int q = f.qmin; q <= f.qmax; q += 2) {
        auto it = sl.find({q, a});
        std::string cell = it == sl.end() ? "." : std::to_string(it->second);
        if (std::find(marks.begin(), marks.end(), std::make_pair(q, a)) != marks.end()) cell = "(" + cell + ")";
        os << std::setw(w) << cell;
      }
      os << "\n";
    }
  }
  return os.str();
}

std::string svg(const TrigradedDims& h, std::optional<int> S, const RenderConfig& c) {
  Frame f = frame_of(h);
  std::set<int> sup = h.delta_support();
  const int title = c.font_size * 2;
  const int axis = c.font_size * 2;
  int panel_h = title + f.rows() * c.cell + axis;
  int width = 2 * c.margin + f.cols() * c.cell;
  int height = 2 * c.margin + static_cast<int>(sup.size()) * panel_h +
               (sup.empty() ? 0 : (static_cast<int>(sup.size()) - 1) * c.panel_gap);
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width << "\" height=\"" << height
     << "\" font-family=\"sans-serif\" font-size=\"" << c.font_size << "\">\n";
  int y0 = c.margin;
  for (int delta : sup) {
    auto sl = slice(h, delta);
    os << "<g class=\"panel\" data-delta=\"" << delta << "\">\n";
    os << "<text x=\"" << c.margin << "\" y=\"" << y0 + c.font_size << "\">&#916; = " << delta << "</text>\n";
    int gy = y0 + title;
    for (int r = 0; r < f.rows(); ++r) {
      int a = f.amax - 2 * r;
      int cy = gy + r * c.cell;
      os << "<text x=\"" << c.margin - 4 << "\" y=\"" << cy + c.cell / 2 + c.font_size / 3
         << "\" text-anchor=\"end\">" << a << "</text>\n";
      for (int k = 0; k < f.cols(); ++k) {
        int q = f.qmin + 2 * k;
        int cx = c.margin + k * c.cell;
        os << "<rect x=\"" << cx << "\" y=\"" << cy << "\" width=\"" << c.cell << "\" height=\"" << c.cell
           << "\" fill=\"none\" stroke=\"" << c.grid_color << "\"/>\n";
        auto it = sl.find({q, a});
        if (it != sl.end())
          os << "<text x=\"" << cx + c.cell / 2 << "\" y=\"" << cy + c.cell / 2 + c.font_size / 3
             << "\" text-anchor=\"middle\">" << it->second << "</text>\n";
      }
    }
    int ay = gy + f.rows() * c.cell + c.font_size + 2;
    for (int k = 0; k < f.cols(); ++k)
      os << "<text x=\"" << c.margin + k * c.cell + c.cell / 2 << "\" y=\"" << ay << "\" text-anchor=\"middle\">"
         << f.qmin + 2 * k << "</text>\n";
    for (auto [q, a] : circles(S, delta)) {
      int cx = c.margin + (q - f.qmin) / 2 * c.cell + c.cell / 2;
      int cy = gy + (f.amax - a) / 2 * c.cell + c.cell / 2;
      os << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"" << c.circle_radius << "\" fill=\"none\" stroke=\""
         << c.circle_color << "\" stroke-width=\"2\"/>\n";
    }
    os << "</g>\n";
    y0 += panel_h + c.panel_gap;
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace

RenderConfig load_render_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j = nlohmann::json::parse(in);
  RenderConfig c;
  for (auto& [k, v] : j.items()) {
    if (k == "cell") c.cell = v.get<int>();
    else if (k == "margin") c.margin = v.get<int>();
    else if (k == "panel_gap") c.panel_gap = v.get<int>();
    else if (k == "font_size") c.font_size = v.get<int>();
    else if (k == "circle_radius") c.circle_radius = v.get<int>();
    else if (k == "circle_color") c.circle_color = v.get<std::string>();
    else if (k == "grid_color") c.grid_color = v.get<std::string>();
    else throw std::runtime_error(path.string() + ": unknown render setting '" + k + "'");
  }
  return c;
}

std::string render_slices(const TrigradedDims& h, std::optional<int> S, RenderFormat fmt, const RenderConfig& cfg) {
  return fmt == RenderFormat::ascii ? ascii(h, S) : svg(h, S, cfg);
}

}  // namespace trihom
