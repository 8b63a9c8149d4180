/* Copyright (c) 2026 The MutualGuide Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License. */
#include "mutualguide/svg.hpp"

#include <iomanip>
#include <sstream>

namespace mutualguide {

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(int width, int height, std::span<const Box> ground_truth,
                       const std::vector<SvgLayer>& layers) {
  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"#1c1c1e\"/>\n";

  for (std::size_t l = 0; l < layers.size(); ++l) {
    const SvgLayer& layer = layers[l];
    svg << "<g id=\"layer-" << l << "\" stroke=\"" << escape(layer.color)
        << "\" fill=\"none\" stroke-width=\"1\" stroke-opacity=\"0.8\">\n";
    for (const Box& b : layer.boxes) {
      svg << "<rect x=\"" << b.x_min() << "\" y=\"" << b.y_min() << "\" width=\"" << b.width()
          << "\" height=\"" << b.height() << "\"/>\n";
    }
    for (const auto& [x, y] : layer.points) {
      svg << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"2.50\" fill=\""
          << escape(layer.color) << "\"/>\n";
    }
    svg << "</g>\n";
  }

  svg << "<g id=\"ground-truth\" stroke=\"#ffffff\" fill=\"none\" stroke-width=\"2\" "
         "stroke-dasharray=\"6 4\">\n";
  for (const Box& b : ground_truth) {
    svg << "<rect x=\"" << b.x_min() << "\" y=\"" << b.y_min() << "\" width=\"" << b.width()
        << "\" height=\"" << b.height() << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g id=\"legend\" font-family=\"monospace\" font-size=\"10\">\n";
  for (std::size_t l = 0; l < layers.size(); ++l) {
    const double y = 12.0 + 12.0 * static_cast<double>(l);
    svg << "<rect x=\"4\" y=\"" << y - 8.0 << "\" width=\"8\" height=\"8\" fill=\""
        << escape(layers[l].color) << "\"/>\n";
    svg << "<text x=\"16\" y=\"" << y << "\" fill=\"#ffffff\">" << escape(layers[l].label)
        << "</text>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

}  // namespace mutualguide
