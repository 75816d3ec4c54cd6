#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>

namespace circ {

// hue in degrees [0, 360), s = v = 1.
inline std::string hsv_to_hex(double hue) {
    hue = std::fmod(hue, 360.0);
    if (hue < 0.0) hue += 360.0;
    const double c = 1.0, x = 1.0 - std::abs(std::fmod(hue / 60.0, 2.0) - 1.0);
    double r = 0, g = 0, b = 0;
    if (hue < 60) { r = c; g = x; }
    else if (hue < 120) { r = x; g = c; }
    else if (hue < 180) { g = c; b = x; }
    else if (hue < 240) { g = x; b = c; }
    else if (hue < 300) { r = x; b = c; }
    else { r = c; b = x; }
    char buf[8];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", static_cast<int>(std::lround(r * 255)),
                  static_cast<int>(std::lround(g * 255)), static_cast<int>(std::lround(b * 255)));
    return buf;
}

// Minimal self-contained SVG 1.1 document builder.
class SvgDocument {
  public:
    SvgDocument(double width, double height) : width_(width), height_(height) {
        if (!(width > 0.0) || !(height > 0.0))
            throw std::invalid_argument("svg dimensions must be positive");
    }

    void circle(double cx, double cy, double r, const std::string& fill) {
        body_ << "  <circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"" << num(r)
              << "\" fill=\"" << fill << "\"/>\n";
    }

    void line(double x1, double y1, double x2, double y2, const std::string& stroke,
              double stroke_width, const std::string& extra = "") {
        body_ << "  <line x1=\"" << num(x1) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x2)
              << "\" y2=\"" << num(y2) << "\" stroke=\"" << stroke << "\" stroke-width=\""
              << num(stroke_width) << "\"" << (extra.empty() ? "" : " " + extra) << "/>\n";
    }

    void rect(double x, double y, double w, double h, const std::string& stroke,
              const std::string& fill) {
        body_ << "  <rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(w)
              << "\" height=\"" << num(h) << "\" stroke=\"" << stroke << "\" fill=\"" << fill
              << "\"/>\n";
    }

    void polyline(const std::string& points, const std::string& stroke, double stroke_width) {
        body_ << "  <polyline points=\"" << points << "\" fill=\"none\" stroke=\"" << stroke
              << "\" stroke-width=\"" << num(stroke_width) << "\"/>\n";
    }

    void polygon(const std::string& points, const std::string& fill) {
        body_ << "  <polygon points=\"" << points << "\" fill=\"" << fill << "\"/>\n";
    }

    void text(double x, double y, const std::string& content, double size = 11.0) {
        body_ << "  <text x=\"" << num(x) << "\" y=\"" << num(y) << "\" font-size=\"" << num(size)
              << "\" font-family=\"sans-serif\">" << escape(content) << "</text>\n";
    }

    std::string str() const {
        std::ostringstream os;
        os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width_)
           << "\" height=\"" << num(height_) << "\" viewBox=\"0 0 " << num(width_) << " "
           << num(height_) << "\">\n"
           << body_.str() << "</svg>\n";
        return os.str();
    }

    static std::string num(double v) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", v);
        return buf;
    }

  private:
    static std::string escape(const std::string& s) {
        std::string out;
        for (char c : s) {
            if (c == '&') out += "&amp;";
            else if (c == '<') out += "&lt;";
            else if (c == '>') out += "&gt;";
            else out += c;
        }
        return out;
    }

    double width_, height_;
    std::ostringstream body_;
};

} // namespace circ
