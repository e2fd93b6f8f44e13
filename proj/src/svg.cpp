#include "synchro/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "synchro/csvio.hpp"

namespace synchro {

void write_svg_curves(const std::string& path, const std::vector<SvgSeries>& series,
                      const std::string& title, const std::string& xlabel,
                      const std::string& ylabel) {
  const double W = 640, H = 420;
  const double ml = 60, mr = 20, mt = 40, mb = 50;  // margins
  double xmin = 1e300, xmax = -1e300, ymin = 0.0, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      const double e = i < s.err.size() ? s.err[i] : 0.0;
      ymax = std::max(ymax, s.y[i] + e);
    }
  if (!(xmax >= xmin)) throw std::invalid_argument("svg: no data");
  if (xmax == xmin) xmax = xmin + 1.0;
  ymax = std::max(ymax * 1.05, 1e-12);

  const auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  const auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

  std::ostringstream os;
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
     << "' viewBox='0 0 " << W << " " << H << "'>\n";
  os << "<rect width='100%' height='100%' fill='white'/>\n";
  os << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>"
     << title << "</text>\n";
  os << "<text x='" << W / 2 << "' y='" << H - 12
     << "' text-anchor='middle' font-size='12'>" << xlabel << "</text>\n";
  os << "<text x='16' y='" << H / 2
     << "' text-anchor='middle' font-size='12' transform='rotate(-90 16 " << H / 2
     << ")'>" << ylabel << "</text>\n";
  // frame and ticks
  os << "<rect x='" << ml << "' y='" << mt << "' width='" << W - ml - mr
     << "' height='" << H - mt - mb << "' fill='none' stroke='#444'/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 4.0;
    const double yv = ymin + (ymax - ymin) * k / 4.0;
    os << "<text x='" << px(xv) << "' y='" << H - mb + 16
       << "' text-anchor='middle' font-size='10'>" << fmt(xv) << "</text>\n";
    os << "<text x='" << ml - 6 << "' y='" << py(yv) + 3
       << "' text-anchor='end' font-size='10'>" << fmt(yv) << "</text>\n";
  }
  double legy = mt + 14;
  for (const auto& s : series) {
    os << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << px(s.x[i]) << "," << py(s.y[i]) << " ";
    os << "'/>\n";
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      os << "<circle cx='" << px(s.x[i]) << "' cy='" << py(s.y[i])
         << "' r='3' fill='" << s.color << "'/>\n";
      if (i < s.err.size() && s.err[i] > 0) {
        os << "<line x1='" << px(s.x[i]) << "' x2='" << px(s.x[i]) << "' y1='"
           << py(s.y[i] - s.err[i]) << "' y2='" << py(s.y[i] + s.err[i])
           << "' stroke='" << s.color << "'/>\n";
      }
    }
    if (!s.label.empty()) {
      os << "<text x='" << W - mr - 8 << "' y='" << legy
         << "' text-anchor='end' font-size='11' fill='" << s.color << "'>"
         << s.label << "</text>\n";
      legy += 14;
    }
  }
  os << "</svg>\n";

  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  f << os.str();
}

}  // namespace synchro
