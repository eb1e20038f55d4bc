#pragma once

// Curve files, chain files and the fixture corpus.
//
//   ring p=32003 base=field
//   gens:
//   X*Z-Y^2
//   ...
//
// Blank lines and lines starting with '#' are ignored.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "chain.hpp"

namespace liaison {

struct CurveFile {
    BaseRing ring;
    std::vector<Poly> gens;
    Ideal ideal() const { return Ideal(ring, gens); }
};

namespace detail {

inline std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

inline BaseRing parse_ring_header(const std::string& line) {
    std::istringstream in(line);
    std::string word;
    in >> word;
    if (word != "ring") throw ParseError("expected 'ring p=<prime> base=<field|dual>', got '" + line + "'");
    std::uint32_t p = kDefaultPrime;
    std::string base = "field";
    while (in >> word) {
        auto eq = word.find('=');
        if (eq == std::string::npos) throw ParseError("bad ring attribute '" + word + "'");
        std::string key = word.substr(0, eq), val = word.substr(eq + 1);
        if (key == "p") {
            try {
                p = std::uint32_t(std::stoul(val));
            } catch (const std::exception&) {
                throw ParseError("bad prime '" + val + "'");
            }
        } else if (key == "base") {
            base = val;
        } else {
            throw ParseError("unknown ring attribute '" + key + "'");
        }
    }
    try {
        if (base == "field") return BaseRing::prime_field(p);
        if (base == "dual") return BaseRing::dual_numbers(p);
    } catch (const std::invalid_argument& e) {
        throw ParseError(e.what());
    }
    throw ParseError("base must be 'field' or 'dual', got '" + base + "'");
}

inline std::string ring_header(const BaseRing& R) {
    return "ring p=" + std::to_string(R.p) + " base=" + (R.is_dual() ? "dual" : "field");
}

}  // namespace detail

inline CurveFile parse_curve_file(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    std::vector<std::string> lines;
    while (std::getline(in, raw)) {
        std::string t = detail::trim(raw);
        if (t.empty() || t[0] == '#') continue;
        lines.push_back(t);
    }
    if (lines.size() < 2) throw ParseError("curve file needs a ring line and a 'gens:' line");
    CurveFile f{detail::parse_ring_header(lines[0]), {}};
    if (lines[1] != "gens:") throw ParseError("expected 'gens:', got '" + lines[1] + "'");
    for (std::size_t i = 2; i < lines.size(); ++i) {
        Poly g = parse_poly(f.ring, lines[i]);
        if (!g.is_homogeneous()) throw ParseError("generator is not homogeneous: " + lines[i]);
        f.gens.push_back(g);
    }
    if (f.gens.empty()) throw ParseError("no generators");
    return f;
}

inline std::string read_text(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline CurveFile read_curve_file(const std::string& path) { return parse_curve_file(read_text(path)); }

inline std::string format_curve_file(const Ideal& I) {
    std::string out = detail::ring_header(I.ring()) + "\ngens:\n";
    for (const Poly& g : I.gens()) out += g.to_string() + "\n";
    return out;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 0xcbf29ce484222325ull) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    static const char* d = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, v >>= 4) s[std::size_t(i)] = d[v & 15];
    return s;
}

// ---------------------------------------------------------------------------
// Chain files (JSON)

inline nlohmann::json ideal_json(const Ideal& I) {
    nlohmann::json a = nlohmann::json::array();
    for (const Poly& g : I.gens()) a.push_back(g.to_string());
    return a;
}

inline Ideal ideal_from_json(const BaseRing& R, const nlohmann::json& a) {
    std::vector<Poly> g;
    for (const auto& s : a) g.push_back(parse_poly(R, s.get<std::string>()));
    return Ideal(R, g);
}

inline nlohmann::json chain_json(const BaseRing& R, const std::vector<BiliaisonStep>& steps) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["ring"] = detail::ring_header(R);
    j["steps"] = nlohmann::json::array();
    for (const BiliaisonStep& s : steps)
        j["steps"].push_back({{"Q", s.Q.to_string()}, {"h", s.h}, {"from", ideal_json(s.from)}, {"to", ideal_json(s.to)}});
    return j;
}

/// Steps without witnesses; replay_chain recomputes them.
inline std::pair<BaseRing, std::vector<BiliaisonStep>> chain_from_json(const nlohmann::json& j) {
    try {
        BaseRing R = detail::parse_ring_header(j.at("ring").get<std::string>());
        std::vector<BiliaisonStep> steps;
        for (const auto& s : j.at("steps"))
            steps.push_back(BiliaisonStep{ideal_from_json(R, s.at("from")), ideal_from_json(R, s.at("to")),
                                          parse_poly(R, s.at("Q").get<std::string>()), s.at("h").get<int>(),
                                          GradedMap()});
        return {R, steps};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("bad chain file: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Corpus

struct CorpusEntry {
    std::string name;
    std::string path;
};

/// *.curve files of a directory, sorted by name.
inline std::vector<CorpusEntry> list_corpus(const std::string& dir) {
    std::vector<CorpusEntry> out;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".curve") out.push_back({e.path().stem().string(), e.path().string()});
    std::sort(out.begin(), out.end(), [](const CorpusEntry& a, const CorpusEntry& b) { return a.name < b.name; });
    return out;
}

}  // namespace liaison
