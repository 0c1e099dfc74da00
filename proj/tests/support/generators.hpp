#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "fibertrace/diagram.hpp"
#include "fibertrace/errors.hpp"

namespace fibertrace::testing {

inline std::string closed_braid_word(std::mt19937& rng, int strands, int length) {
    std::uniform_int_distribution<int> slot(1, strands - 1);
    std::bernoulli_distribution positive(0.5);
    std::string w;
    for (int i = 0; i < length; ++i) {
        if (!w.empty()) w += ' ';
        w += (positive(rng) ? "s" : "S") + std::to_string(slot(rng));
    }
    return w;
}

// Random closed braid that closes to a knot, or nothing after `attempts` draws.
inline std::optional<AnnularDiagram> random_closed_braid(std::mt19937& rng, int strands, int max_length,
                                                         int attempts = 200) {
    std::uniform_int_distribution<int> len(strands - 1, max_length);
    for (int i = 0; i < attempts; ++i) {
        try {
            return build_diagram(parse_morse_word(closed_braid_word(rng, strands, len(rng))), strands);
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

// Random annular Morse word with `pairs` cups and `pairs` caps around `strands` closure strands.
inline std::string morse_word(std::mt19937& rng, int strands, int pairs, int crossings) {
    std::string w;
    int count = strands;
    int cups = pairs;
    int caps = pairs;
    int left = crossings;
    std::bernoulli_distribution positive(0.5);
    while (cups + caps + left > 0) {
        std::vector<int> options;  // 0 crossing, 1 cup, 2 cap
        if (left > 0 && count >= 2) options.push_back(0);
        if (cups > 0) options.push_back(1);
        if (caps > 0 && count >= 2) options.push_back(2);
        if (options.empty()) break;
        int pick = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
        if (!w.empty()) w += ' ';
        if (pick == 0) {
            w += (positive(rng) ? "s" : "S") + std::to_string(std::uniform_int_distribution<int>(1, count - 1)(rng));
            --left;
        } else if (pick == 1) {
            w += "cup" + std::to_string(std::uniform_int_distribution<int>(1, count + 1)(rng));
            count += 2;
            --cups;
        } else {
            w += "cap" + std::to_string(std::uniform_int_distribution<int>(1, count - 1)(rng));
            count -= 2;
            --caps;
        }
    }
    return w;
}

inline std::optional<AnnularDiagram> random_morse_knot(std::mt19937& rng, int strands, int pairs, int crossings,
                                                       int attempts = 400) {
    for (int i = 0; i < attempts; ++i) {
        try {
            return build_diagram(parse_morse_word(morse_word(rng, strands, pairs, crossings)), strands);
        } catch (const Error&) {
        }
    }
    return std::nullopt;
}

// Rotates the word by `shift` tokens; the closure strand count follows the rotation.
inline AnnularDiagram rotated(const AnnularDiagram& d, int shift) {
    MorseWord w;
    const auto& t = d.word().tokens;
    const int n = static_cast<int>(t.size());
    for (int i = 0; i < n; ++i) w.tokens.push_back(t[static_cast<std::size_t>((i + shift) % n)]);
    int count = d.strands();
    for (int i = 0; i < shift % n; ++i) {
        const auto& tok = t[static_cast<std::size_t>(i)];
        if (tok.kind == TokenKind::Cup) count += 2;
        if (tok.kind == TokenKind::Cap) count -= 2;
    }
    return build_diagram(w, count);
}

}  // namespace fibertrace::testing
