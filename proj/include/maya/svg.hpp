#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace maya::svg {

// Minimal SVG 1.1 emitter: polylines and filled cells, enough for level
// curves and |K| heatmaps without a plotting dependency.
class Document {
public:
    Document(double width, double height) : w_(width), h_(height) {}

    void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                  double stroke_width = 1.0) {
        if (pts.empty()) return;
        body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\""
              << stroke_width << "\" points=\"";
        for (const auto& [x, y] : pts) body_ << x << ',' << y << ' ';
        body_ << "\"/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& fill) {
        body_ << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << w << "\" height=\""
              << h << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& s, double size = 12) {
        body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size << "\">" << s
              << "</text>\n";
    }

    std::string str() const {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << w_
           << "\" height=\"" << h_ << "\" viewBox=\"0 0 " << w_ << ' ' << h_ << "\">\n"
           << body_.str() << "</svg>\n";
        return os.str();
    }

private:
    double w_, h_;
    std::ostringstream body_;
};

inline std::string gray(double v) {
    v = std::clamp(v, 0.0, 1.0);
    int level = static_cast<int>(std::lround(255 * (1.0 - v)));
    std::ostringstream os;
    os << "rgb(" << level << ',' << level << ',' << level << ")";
    return os.str();
}

inline std::string heatmap(const std::vector<std::vector<double>>& values, double cell = 8.0) {
    size_t rows = values.size();
    size_t cols = rows ? values[0].size() : 0;
    double vmax = 1e-300;
    for (const auto& row : values)
        for (double v : row) vmax = std::max(vmax, std::abs(v));
    Document doc(static_cast<double>(cols) * cell, static_cast<double>(rows) * cell);
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j)
            doc.rect(static_cast<double>(j) * cell, static_cast<double>(i) * cell, cell, cell,
                     gray(std::abs(values[i][j]) / vmax));
    return doc.str();
}

}  // namespace maya::svg
