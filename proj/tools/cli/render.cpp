#include "render.hpp"

#include <cstdio>
#include <algorithm>
#include <sstream>

namespace achset::cli {

namespace {

constexpr double kWidth = 800, kMargin = 20, kBarY = 40, kBarH = 24;

double x_of(const Rational& v, const Rational& total) {
    if (total.sign() == 0) return kMargin;
    return kMargin + (kWidth - 2 * kMargin) * (v / total).approx();
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

std::string label_text(const GapLabel& g) {
    const std::string ends = "(" + g.gap.a.str() + ", " + g.gap.b.str() + ")";
    if (!g.k) return ends;
    const std::string k = std::to_string(*g.k);
    return "(r_" + k + ", x_" + k + ") = " + ends;
}

std::string render_svg(const Cover& c, const Rational& total, const std::optional<GapLabel>& label) {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"120\">\n";
    os << "  <title>depth " << c.depth << " cover of [0, " << total.str() << "]</title>\n";
    for (const auto& iv : c.intervals) {
        const double x0 = x_of(iv.lo, total), x1 = x_of(iv.hi, total);
        os << "  <rect x=\"" << fmt(x0) << "\" y=\"" << kBarY << "\" width=\"" << fmt(std::max(x1 - x0, 0.5))
           << "\" height=\"" << kBarH << "\" fill=\"black\"><title>[" << iv.lo.str() << ", " << iv.hi.str()
           << "]</title></rect>\n";
    }
    if (label) {
        const double x0 = x_of(label->gap.a, total), x1 = x_of(label->gap.b, total);
        const double mid = (x0 + x1) / 2;
        os << "  <line x1=\"" << fmt(x0) << "\" y1=\"" << kBarY + kBarH + 6 << "\" x2=\"" << fmt(x1) << "\" y2=\""
           << kBarY + kBarH + 6 << "\" stroke=\"red\"/>\n";
        os << "  <text x=\"" << fmt(mid) << "\" y=\"" << kBarY + kBarH + 24
           << "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\" fill=\"red\">"
           << label_text(*label) << "</text>\n";
    }
    os << "  <text x=\"" << kMargin << "\" y=\"20\" font-family=\"monospace\" font-size=\"12\">0</text>\n";
    os << "  <text x=\"" << fmt(kWidth - kMargin) << "\" y=\"20\" font-family=\"monospace\" font-size=\"12\" "
       << "text-anchor=\"end\">" << total.str() << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

std::string render_ascii(const Cover& c, const Rational& total, const std::optional<GapLabel>& label,
                         std::size_t width) {
    // column j covers [j, j+1) * total / width; '#' when an interval meets it
    std::string bar(width, ' ');
    for (std::size_t j = 0; j < width; ++j) {
        const Rational lo = total * Rational(static_cast<long>(j), static_cast<long>(width));
        const Rational hi = total * Rational(static_cast<long>(j + 1), static_cast<long>(width));
        for (const auto& iv : c.intervals) {
            if (iv.lo < hi && iv.hi >= lo) {
                bar[j] = '#';
                break;
            }
        }
    }
    std::ostringstream os;
    os << "0" << std::string(width > 1 ? width - 1 : 0, ' ') << total.str() << "\n";
    os << "|" << bar << "|\n";
    if (label) {
        const auto col = [&](const Rational& v) {
            const Rational pos = v / total * Rational(static_cast<long>(width));
            return static_cast<std::size_t>(std::min<double>(pos.approx(), static_cast<double>(width - 1)));
        };
        const std::size_t a = col(label->gap.a), b = std::max(col(label->gap.b), a + 1);
        std::string mark(width + 2, ' ');
        for (std::size_t j = a; j < b && j < width; ++j) mark[j + 1] = '^';
        while (!mark.empty() && mark.back() == ' ') mark.pop_back();
        os << mark << "\n";
        os << "longest gap " << label_text(*label) << "\n";
    }
    return os.str();
}

}  // namespace achset::cli
