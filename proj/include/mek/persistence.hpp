#pragma once

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mek/command.hpp"
#include "mek/grid.hpp"

namespace mek {

inline constexpr int kFormatVersion = 1;

enum class DecodeErrorCode { unknown_version, malformed, invalid };

constexpr std::string_view decode_error_name(DecodeErrorCode c) noexcept {
    switch (c) {
        case DecodeErrorCode::unknown_version: return "UNKNOWN_VERSION";
        case DecodeErrorCode::malformed: return "MALFORMED";
        case DecodeErrorCode::invalid: return "INVALID";
    }
    return "?";
}

/// Document rejection. `where` names the offending field path or line;
/// `violations` is filled for INVALID.
class DecodeError : public std::runtime_error {
public:
    DecodeError(DecodeErrorCode code, std::string where, std::string detail, std::vector<Violation> violations = {})
        : std::runtime_error(std::string(decode_error_name(code)) + (where.empty() ? "" : " at " + where) + ": " +
                             detail),
          code_(code),
          where_(std::move(where)),
          violations_(std::move(violations)) {}

    DecodeErrorCode code() const noexcept { return code_; }
    const std::string& where() const noexcept { return where_; }
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    DecodeErrorCode code_;
    std::string where_;
    std::vector<Violation> violations_;
};

namespace detail {

inline std::string encode_command(const Command& c) {
    std::string out = R"({"family":")";
    out += family_name(c.kind.family());
    out += R"(","variation":")";
    out += variation_name(c.kind.variation());
    out += R"(","tiles":[)";
    const auto tiles = c.tiles.tiles();
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (i) out += ',';
        out += static_cast<char>('0' + tiles[i].index());
    }
    out += "]}";
    return out;
}

[[noreturn]] inline void malformed(const std::string& where, const std::string& detail) {
    throw DecodeError(DecodeErrorCode::malformed, where, detail);
}

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) malformed(where, std::string("missing field \"") + key + "\"");
    return *it;
}

inline std::optional<Family> parse_family(std::string_view s) {
    for (Family f : kAllFamilies) {
        if (family_name(f) == s) return f;
    }
    return std::nullopt;
}

inline std::optional<Variation> parse_variation(std::string_view s) {
    for (Variation v : kAllVariations) {
        if (variation_name(v) == s) return v;
    }
    return std::nullopt;
}

inline CommandGrid decode_tiles(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 9) malformed(where, "expected an array of 9 color indexes");
    CommandGrid g;
    for (std::size_t i = 0; i < 9; ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!j[i].is_number_integer()) malformed(at, "color index must be an integer");
        const auto color = Color::from_index(j[i].get<int>());
        if (!color) malformed(at, "color index " + j[i].dump() + " outside 1..9");
        g.tiles()[i] = *color;
    }
    return g;
}

inline Command decode_command(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object()) malformed(where, "expected a command object");
    const auto& fam = field(j, "family", where);
    const auto& var = field(j, "variation", where);
    if (!fam.is_string()) malformed(where + ".family", "expected a string");
    if (!var.is_string()) malformed(where + ".variation", "expected a string");
    const auto family = parse_family(fam.get<std::string>());
    if (!family) malformed(where + ".family", "unknown command family " + fam.dump());
    const auto variation = parse_variation(var.get<std::string>());
    if (!variation || !variation_valid_for(*family, *variation)) {
        malformed(where + ".variation", "variation " + var.dump() + " is not valid for " + fam.dump());
    }
    return Command{CommandKind{*family, *variation}, decode_tiles(field(j, "tiles", where), where + ".tiles")};
}

}  // namespace detail

/// Canonical mechanic document: fixed key order and layout, one command per
/// line, so equal mechanics encode to identical bytes.
inline std::string encode_mechanic(const Mechanic& m) {
    std::string out = "{\n";
    out += "  \"format_version\": " + std::to_string(kFormatVersion) + ",\n";
    out += "  \"name\": " + nlohmann::json(m.name).dump() + ",\n";
    out += "  \"brush\": " + detail::encode_command(m.brush_command()) + ",\n";
    out += "  \"rules\": [\n";
    for (int r = 0; r < kRuleCount; ++r) {
        out += "    [\n";
        for (int c = 0; c < kRuleLength; ++c) {
            out += "      " + detail::encode_command(m.rules[r][c]);
            out += c + 1 < kRuleLength ? ",\n" : "\n";
        }
        out += r + 1 < kRuleCount ? "    ],\n" : "    ]\n";
    }
    out += "  ]\n}\n";
    return out;
}

inline Mechanic decode_mechanic_json(const nlohmann::json& doc) {
    using detail::field;
    using detail::malformed;
    if (!doc.is_object()) malformed("$", "expected a mechanic object");
    const auto& version = field(doc, "format_version", "$");
    if (!version.is_number_integer()) malformed("$.format_version", "expected an integer");
    if (version.get<long long>() != kFormatVersion) {
        throw DecodeError(DecodeErrorCode::unknown_version, "$.format_version",
                          "unsupported format_version " + version.dump());
    }
    Mechanic m;
    const auto& name = field(doc, "name", "$");
    if (!name.is_string()) malformed("$.name", "expected a string");
    m.name = name.get<std::string>();

    const Command brush = detail::decode_command(field(doc, "brush", "$"), "$.brush");
    if (brush.kind != CommandKind{Family::write}) malformed("$.brush", "brush must be a plain WRITE command");
    m.brush = brush.tiles;

    const auto& rules = field(doc, "rules", "$");
    if (!rules.is_array() || rules.size() != kRuleCount) malformed("$.rules", "expected an array of 9 rules");
    for (std::size_t r = 0; r < kRuleCount; ++r) {
        const std::string where = "$.rules[" + std::to_string(r) + "]";
        if (!rules[r].is_array() || rules[r].size() != kRuleLength) malformed(where, "expected an array of 9 commands");
        for (std::size_t c = 0; c < kRuleLength; ++c) {
            m.rules[r][c] = detail::decode_command(rules[r][c], where + "[" + std::to_string(c) + "]");
        }
    }

    auto violations = validate_mechanic(m);
    if (!violations.empty()) {
        const std::string first = violations.front().describe();
        throw DecodeError(DecodeErrorCode::invalid, "", first, std::move(violations));
    }
    return m;
}

inline Mechanic decode_mechanic(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        // Translate the byte offset into line:column.
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw DecodeError(DecodeErrorCode::malformed, "line " + std::to_string(line) + " column " + std::to_string(col),
                          "JSON syntax error");
    }
    return decode_mechanic_json(doc);
}

/// Ten lines of ten playground digits then three lines of three memory
/// digits, each terminated by LF.
inline std::string encode_board(const BoardState& b) {
    std::string out;
    out.reserve(10 * 11 + 3 * 4);
    for (int y = 0; y < Playground::kHeight; ++y) {
        for (int x = 0; x < Playground::kWidth; ++x) out += static_cast<char>('0' + b.playground.at(x, y).index());
        out += '\n';
    }
    for (int y = 0; y < MemoryGrid::kHeight; ++y) {
        for (int x = 0; x < MemoryGrid::kWidth; ++x) out += static_cast<char>('0' + b.memory.at(x, y).index());
        out += '\n';
    }
    return out;
}

namespace detail {

template <int W, int H>
void decode_rows(const std::vector<std::string_view>& lines, std::size_t first, Grid<W, H>& g) {
    for (int y = 0; y < H; ++y) {
        const std::string_view line = lines[first + static_cast<std::size_t>(y)];
        const std::string where = "line " + std::to_string(first + static_cast<std::size_t>(y) + 1);
        if (line.size() != static_cast<std::size_t>(W)) {
            malformed(where, "expected " + std::to_string(W) + " digits, found " + std::to_string(line.size()) +
                                 " characters");
        }
        for (int x = 0; x < W; ++x) {
            const char ch = line[static_cast<std::size_t>(x)];
            if (ch < '1' || ch > '9') {
                malformed(where + " column " + std::to_string(x + 1), "expected a digit 1..9");
            }
            g.at(x, y) = Color{ch - '0'};
        }
    }
}

}  // namespace detail

inline BoardState decode_board(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start < text.size()) {
        const std::size_t nl = text.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(text.substr(start));
            break;
        }
        lines.push_back(text.substr(start, nl - start));
        start = nl + 1;
    }
    constexpr std::size_t kLines = Playground::kHeight + MemoryGrid::kHeight;
    if (lines.size() != kLines) {
        detail::malformed("line " + std::to_string(std::min(lines.size(), kLines) + 1),
                          "expected " + std::to_string(kLines) + " lines, found " + std::to_string(lines.size()));
    }
    BoardState b;
    detail::decode_rows(lines, 0, b.playground);
    detail::decode_rows(lines, Playground::kHeight, b.memory);
    return b;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
}

}  // namespace mek
