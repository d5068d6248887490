#include "colorloss/types.h"

namespace colorloss {

char color_char(Color c) {
    switch (c) {
        case Color::R: return 'R';
        case Color::G: return 'G';
        default: return 'B';
    }
}

Color parse_color(std::string_view s) {
    if (s == "R" || s == "r" || s == "red") return Color::R;
    if (s == "G" || s == "g" || s == "green") return Color::G;
    if (s == "B" || s == "b" || s == "blue") return Color::B;
    throw ValidationError("unknown color '" + std::string(s) + "' (expected R, G or B)");
}

std::string to_string(Geometry g) { return g == Geometry::FourEightEight ? "4.8.8" : "6.6.6"; }

std::string to_string(Variant v) { return v == Variant::Square ? "square" : "triangular"; }

Geometry parse_geometry(std::string_view s) {
    if (s == "4.8.8" || s == "488") return Geometry::FourEightEight;
    if (s == "6.6.6" || s == "666") return Geometry::SixSixSix;
    throw ValidationError("unknown geometry '" + std::string(s) + "' (expected 4.8.8 or 6.6.6)");
}

Variant parse_variant(std::string_view s) {
    if (s == "square") return Variant::Square;
    if (s == "triangular") return Variant::Triangular;
    throw ValidationError("unknown variant '" + std::string(s) + "' (expected square or triangular)");
}

}  // namespace colorloss
