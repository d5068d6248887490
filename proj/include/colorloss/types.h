#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace colorloss {

using Qubit = int32_t;

enum class Color : uint8_t { R = 0, G = 1, B = 2 };

inline constexpr std::array<Color, 3> kColors{Color::R, Color::G, Color::B};

inline constexpr int idx(Color c) { return static_cast<int>(c); }
inline constexpr Color color_at(int i) { return static_cast<Color>(i); }

// The unordered pair of colors other than c, in R,G,B order.
inline constexpr std::pair<Color, Color> complement(Color c) {
    switch (c) {
        case Color::R: return {Color::G, Color::B};
        case Color::G: return {Color::R, Color::B};
        default: return {Color::R, Color::G};
    }
}

inline constexpr Color third_color(Color a, Color b) {
    return color_at(3 - idx(a) - idx(b));
}

char color_char(Color c);
Color parse_color(std::string_view s);

enum class Geometry : uint8_t { FourEightEight, SixSixSix };
enum class Variant : uint8_t { Square, Triangular };

std::string to_string(Geometry g);
std::string to_string(Variant v);
Geometry parse_geometry(std::string_view s);
Variant parse_variant(std::string_view s);

// Bad user input or a lattice that breaks its invariants.
class ValidationError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// File could not be read or written.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// Reconstruction was asked to do something the current code does not allow.
class ProtocolError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

}  // namespace colorloss
