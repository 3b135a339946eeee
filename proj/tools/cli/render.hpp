#pragma once

#include <optional>
#include <string>

#include "achset/cover.hpp"

namespace achset::cli {

struct GapLabel {
    Gap gap;
    std::optional<std::size_t> k;  // gap == (r_k, x_k)
};

/// "(r_2, x_2) = (5/12, 1/2)", or just the endpoints when k is unknown.
std::string label_text(const GapLabel& g);

/// Cover intervals as bars over [0, total], gaps left blank.
std::string render_svg(const Cover& c, const Rational& total, const std::optional<GapLabel>& label);
std::string render_ascii(const Cover& c, const Rational& total, const std::optional<GapLabel>& label,
                         std::size_t width = 72);

}  // namespace achset::cli
