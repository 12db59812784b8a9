#include "tabkit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace tabkit {

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // grid value -> mean metric
};

std::vector<Series> collect_series(const SweepResult& result,
                                   const ExperimentConfig& config) {
  const bool use_accuracy = config.metric == "accuracy";
  // keyed by (gamma, method) in method order for a stable legend
  std::map<std::pair<double, std::string>, Series> by_key;
  for (const auto& r : result.summaries) {
    const double gamma_key = std::isnan(r.gamma) ? -1.0 : r.gamma;
    auto& series = by_key[{gamma_key, r.method}];
    if (series.label.empty()) {
      std::ostringstream label;
      label << r.method;
      if (!std::isnan(r.gamma) && config.gammas.size() > 1)
        label << " (gamma=" << r.gamma << ")";
      series.label = label.str();
    }
    series.points.emplace_back(r.kind_param_value,
                               use_accuracy ? r.accuracy : r.bayes_agreement);
  }
  std::vector<Series> out;
  for (auto& [key, series] : by_key) {
    std::sort(series.points.begin(), series.points.end());
    out.push_back(std::move(series));
  }
  return out;
}

const char* kPalette[] = {"#c0392b", "#27ae60", "#2980b9", "#8e6a2f",
                          "#8e44ad", "#16a085", "#d35400", "#2c3e50"};

std::string fmt_tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

}  // namespace

void write_plot_script(const SweepResult&, const ExperimentConfig& config,
                       const std::string& script_path, const std::string& csv_path) {
  // Strip any directory prefix; the script lives next to the CSV.
  std::string csv_name = csv_path;
  const auto slash = csv_name.find_last_of('/');
  if (slash != std::string::npos) csv_name = csv_name.substr(slash + 1);

  const std::string metric_col =
      config.metric == "accuracy" ? "accuracy" : "bayes_agreement";
  std::ofstream out(script_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write plot script: " + script_path);
  out << "#!/usr/bin/env python3\n"
      << "\"\"\"Renders the mean " << metric_col
      << " of each method against the grid parameter.\n"
      << "Reads the summary rows (replicate == -1) of the companion CSV.\"\"\"\n"
      << "import csv\n"
      << "import os\n"
      << "from collections import defaultdict\n"
      << "\n"
      << "import matplotlib\n"
      << "matplotlib.use(\"Agg\")\n"
      << "import matplotlib.pyplot as plt\n"
      << "\n"
      << "here = os.path.dirname(os.path.abspath(__file__))\n"
      << "series = defaultdict(list)\n"
      << "with open(os.path.join(here, \"" << csv_name << "\")) as fh:\n"
      << "    for row in csv.DictReader(fh):\n"
      << "        if int(row[\"replicate\"]) != -1:\n"
      << "            continue\n"
      << "        label = row[\"method\"]\n"
      << "        if row[\"gamma\"]:\n"
      << "            label += \" (gamma=%s)\" % row[\"gamma\"]\n"
      << "        series[label].append((float(row[\"kind_param_value\"]),\n"
      << "                              float(row[\"" << metric_col << "\"])))\n"
      << "\n"
      << "plt.figure(figsize=(7, 5))\n"
      << "for label in sorted(series):\n"
      << "    pts = sorted(series[label])\n"
      << "    plt.plot([p[0] for p in pts], [p[1] for p in pts], marker=\"o\",\n"
      << "             label=label)\n"
      << "plt.xlabel(\"" << (config.scenario == "flip" ? "r" : "delta") << "\")\n"
      << "plt.ylabel(\"" << metric_col << "\")\n"
      << "plt.title(\"" << config.scenario << " design\")\n"
      << "plt.grid(True, alpha=0.3)\n"
      << "plt.legend(fontsize=8)\n"
      << "plt.tight_layout()\n"
      << "plt.savefig(os.path.join(here, \""
      << (config.scenario + "_figure.png") << "\"), dpi=150)\n";
}

void write_svg_chart(const SweepResult& result, const ExperimentConfig& config,
                     const std::string& svg_path) {
  const std::vector<Series> series = collect_series(result, config);

  const double width = 760, height = 520;
  const double ml = 70, mr = 180, mt = 40, mb = 55;
  const double plot_w = width - ml - mr, plot_h = height - mt - mb;

  double x_min = 0, x_max = 1, y_min = 0.4, y_max = 1.0;
  bool first = true;
  for (const auto& s : series)
    for (const auto& [x, y] : s.points) {
      if (first) {
        x_min = x_max = x;
        y_min = y_max = y;
        first = false;
      } else {
        x_min = std::min(x_min, x);
        x_max = std::max(x_max, x);
        y_min = std::min(y_min, y);
        y_max = std::max(y_max, y);
      }
    }
  if (x_max == x_min) x_max = x_min + 1;
  const double y_pad = std::max(0.02, (y_max - y_min) * 0.08);
  y_min -= y_pad;
  y_max += y_pad;

  auto sx = [&](double x) { return ml + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return mt + (y_max - y) / (y_max - y_min) * plot_h; };

  std::ofstream out(svg_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write SVG: " + svg_path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << ml << "\" y=\"24\" font-family=\"sans-serif\" "
         "font-size=\"16\">"
      << config.scenario << " design: mean " << config.metric
      << " per method</text>\n";

  // axes + ticks
  out << "<g stroke=\"#444\" stroke-width=\"1\">\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt + plot_h << "\" x2=\"" << ml + plot_w
      << "\" y2=\"" << mt + plot_h << "\"/>\n";
  out << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << mt + plot_h << "\"/>\n";
  out << "</g>\n";
  const int ticks = 5;
  out << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (int i = 0; i <= ticks; ++i) {
    const double xv = x_min + (x_max - x_min) * i / ticks;
    const double yv = y_min + (y_max - y_min) * i / ticks;
    out << "<line x1=\"" << sx(xv) << "\" y1=\"" << mt + plot_h << "\" x2=\""
        << sx(xv) << "\" y2=\"" << mt + plot_h + 5
        << "\" stroke=\"#444\"/><text x=\"" << sx(xv) << "\" y=\""
        << mt + plot_h + 18 << "\" text-anchor=\"middle\">" << fmt_tick(xv)
        << "</text>\n";
    out << "<line x1=\"" << ml - 5 << "\" y1=\"" << sy(yv) << "\" x2=\"" << ml
        << "\" y2=\"" << sy(yv) << "\" stroke=\"#444\"/><text x=\"" << ml - 8
        << "\" y=\"" << sy(yv) + 4 << "\" text-anchor=\"end\">" << fmt_tick(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << ml + plot_w / 2 << "\" y=\"" << height - 12
      << "\" text-anchor=\"middle\">"
      << (config.scenario == "flip" ? "r" : "delta") << "</text>\n";
  out << "<text x=\"18\" y=\"" << mt + plot_h / 2
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << mt + plot_h / 2
      << ")\">" << config.metric << "</text>\n";
  out << "</g>\n";

  std::size_t color_idx = 0;
  for (const auto& s : series) {
    const char* color = kPalette[color_idx % (sizeof(kPalette) / sizeof(kPalette[0]))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
    for (const auto& [x, y] : s.points) out << sx(x) << ',' << sy(y) << ' ';
    out << "\"/>\n";
    for (const auto& [x, y] : s.points)
      out << "<circle cx=\"" << sx(x) << "\" cy=\"" << sy(y)
          << "\" r=\"3\" fill=\"" << color << "\"/>\n";
    const double ly = mt + 16 + 18 * static_cast<double>(color_idx);
    out << "<line x1=\"" << ml + plot_w + 12 << "\" y1=\"" << ly << "\" x2=\""
        << ml + plot_w + 34 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"/>\n";
    out << "<text x=\"" << ml + plot_w + 40 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label
        << "</text>\n";
    ++color_idx;
  }
  out << "</svg>\n";
}

}  // namespace tabkit
