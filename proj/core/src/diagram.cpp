#include "fibertrace/diagram.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "fibertrace/errors.hpp"

namespace fibertrace {

std::string Token::text() const {
    switch (kind) {
        case TokenKind::Crossing: return (sign > 0 ? "s" : "S") + std::to_string(slot);
        case TokenKind::Cap: return "cap" + std::to_string(slot);
        case TokenKind::Cup: return "cup" + std::to_string(slot);
    }
    return {};
}

std::string MorseWord::to_string() const {
    std::string out;
    for (const auto& t : tokens) {
        if (!out.empty()) out += ' ';
        out += t.text();
    }
    return out;
}

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

Token parse_token(std::string_view word, std::size_t position) {
    Token token;
    std::string_view digits;
    if (word.starts_with("cap")) {
        token.kind = TokenKind::Cap;
        digits = word.substr(3);
    } else if (word.starts_with("cup")) {
        token.kind = TokenKind::Cup;
        digits = word.substr(3);
    } else if (word.starts_with("s") || word.starts_with("S")) {
        token.kind = TokenKind::Crossing;
        token.sign = word[0] == 's' ? 1 : -1;
        digits = word.substr(1);
    } else {
        throw SyntaxError(position, "unknown token '" + std::string(word) + "'");
    }
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        throw SyntaxError(position, "unknown token '" + std::string(word) + "'");
    }
    long long slot = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), slot);
    if (ec != std::errc() || slot > 1'000'000) {
        throw SyntaxError(position, "slot index out of range in '" + std::string(word) + "'");
    }
    if (slot < 1) throw Error(ErrorKind::Slot, "slot indices are 1-based, got '" + std::string(word) + "'");
    token.slot = static_cast<int>(slot);
    return token;
}

}  // namespace

MorseWord parse_morse_word(std::string_view text) {
    MorseWord word;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        if (i >= text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        word.tokens.push_back(parse_token(text.substr(start, i - start), start));
    }
    return word;
}

int Sector::partner(int piece) const {
    const auto& p = pieces.at(static_cast<std::size_t>(piece));
    if (token.kind == TokenKind::Cap && p.out_slot < 0) {
        for (int j = 0; j < static_cast<int>(pieces.size()); ++j) {
            if (j != piece && pieces[static_cast<std::size_t>(j)].out_slot < 0) return j;
        }
    }
    if (token.kind == TokenKind::Cup && p.in_slot < 0) {
        for (int j = 0; j < static_cast<int>(pieces.size()); ++j) {
            if (j != piece && pieces[static_cast<std::size_t>(j)].in_slot < 0) return j;
        }
    }
    return -1;
}

bool Sector::is_cusp_pair(int p, int q) const { return p != q && partner(p) == q; }

long Marking::residue() const {
    if (modulus == 0) return winding;
    long r = winding % modulus;
    return r < 0 ? r + modulus : r;
}

long Marking::label() const { return modulus == 1 ? winding : residue(); }

int AnnularDiagram::max_strands() const {
    int n = strands_;
    for (const auto& s : sectors_) n = std::max({n, s.count_in, s.count_out});
    return n;
}

bool AnnularDiagram::is_closed_braid() const {
    return std::all_of(sectors_.begin(), sectors_.end(), [](const Sector& s) { return s.token.kind == TokenKind::Crossing; });
}

int AnnularDiagram::flux_at(int k) const {
    int flux = 0;
    for (const auto& p : sector(k).pieces) {
        if (p.in_slot >= 0) flux += p.direction;
    }
    return flux;
}

std::string AnnularDiagram::to_text() const {
    return "strands: " + std::to_string(strands_) + "\n" + word_.to_string() + "\n";
}

bool operator==(const AnnularDiagram& a, const AnnularDiagram& b) {
    return a.word_ == b.word_ && a.strands_ == b.strands_ && a.m_ == b.m_ && a.sectors_ == b.sectors_ &&
           a.traversal_ == b.traversal_ && a.passes_before_ == b.passes_before_;
}

AnnularDiagram build_diagram(const MorseWord& word, int strands) {
    if (strands < 0) throw Error(ErrorKind::Slot, "negative strand count");
    if (word.tokens.empty()) throw Error(ErrorKind::EmptyWord, "the word has no sectors");

    AnnularDiagram d;
    d.word_ = word;
    d.strands_ = strands;
    int count = strands;
    for (std::size_t k = 0; k < word.tokens.size(); ++k) {
        const Token& t = word.tokens[k];
        Sector s;
        s.index = static_cast<int>(k);
        s.token = t;
        s.count_in = count;
        int i = t.slot - 1;
        auto mismatch = [&](const std::string& why) {
            return Error(ErrorKind::SlotMismatch,
                         "token " + std::to_string(k + 1) + " '" + t.text() + "' " + why + " (" + std::to_string(count) +
                             " live strands)");
        };
        switch (t.kind) {
            case TokenKind::Crossing:
                if (i + 1 >= count) throw mismatch("needs slots i and i+1");
                for (int j = 0; j < count; ++j) {
                    int out = j == i ? i + 1 : (j == i + 1 ? i : j);
                    s.pieces.push_back({j, out});
                }
                s.count_out = count;
                break;
            case TokenKind::Cap:
                if (i + 1 >= count) throw mismatch("caps slots i and i+1");
                for (int j = 0; j < count; ++j) {
                    int out = j < i ? j : (j <= i + 1 ? -1 : j - 2);
                    s.pieces.push_back({j, out});
                }
                s.count_out = count - 2;
                break;
            case TokenKind::Cup:
                if (i > count) throw mismatch("opens beyond the last slot");
                for (int j = 0; j < count; ++j) s.pieces.push_back({j, j < i ? j : j + 2});
                s.pieces.push_back({-1, i});
                s.pieces.push_back({-1, i + 1});
                s.count_out = count + 2;
                break;
        }
        count = s.count_out;
        d.sectors_.push_back(std::move(s));
    }
    if (count != strands) {
        throw Error(ErrorKind::NotClosed,
                    "word starts with " + std::to_string(strands) + " strands and ends with " + std::to_string(count));
    }

    const int n_sectors = d.sector_count();
    std::vector<std::vector<int>> in_piece(static_cast<std::size_t>(n_sectors));
    std::vector<std::vector<int>> out_piece(static_cast<std::size_t>(n_sectors));
    std::size_t total = 0;
    for (int k = 0; k < n_sectors; ++k) {
        const auto& s = d.sectors_[static_cast<std::size_t>(k)];
        in_piece[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(s.count_in), -1);
        out_piece[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(s.count_out), -1);
        for (int j = 0; j < static_cast<int>(s.pieces.size()); ++j) {
            const auto& p = s.pieces[static_cast<std::size_t>(j)];
            if (p.in_slot >= 0) in_piece[static_cast<std::size_t>(k)][static_cast<std::size_t>(p.in_slot)] = j;
            if (p.out_slot >= 0) out_piece[static_cast<std::size_t>(k)][static_cast<std::size_t>(p.out_slot)] = j;
        }
        total += s.pieces.size();
    }

    int k = 0;
    int piece = 0;
    int dir = 1;
    long passes = 0;
    std::vector<std::vector<bool>> seen(static_cast<std::size_t>(n_sectors));
    for (int j = 0; j < n_sectors; ++j) seen[static_cast<std::size_t>(j)].assign(d.sectors_[static_cast<std::size_t>(j)].pieces.size(), false);
    do {
        auto& sp = d.sectors_[static_cast<std::size_t>(k)].pieces[static_cast<std::size_t>(piece)];
        if (seen[static_cast<std::size_t>(k)][static_cast<std::size_t>(piece)]) {
            throw Error(ErrorKind::NotAKnot, "strand traced twice");
        }
        seen[static_cast<std::size_t>(k)][static_cast<std::size_t>(piece)] = true;
        sp.direction = dir;
        sp.knot_index = static_cast<int>(d.traversal_.size());
        d.traversal_.push_back({k, piece});
        d.passes_before_.push_back(passes);
        const Sector& s = d.sectors_[static_cast<std::size_t>(k)];
        if (dir > 0) {
            if (sp.out_slot >= 0) {
                int next = (k + 1) % n_sectors;
                if (k == n_sectors - 1) ++passes;
                piece = in_piece[static_cast<std::size_t>(next)][static_cast<std::size_t>(sp.out_slot)];
                k = next;
            } else {
                piece = s.partner(piece);
                dir = -1;
            }
        } else {
            if (sp.in_slot >= 0) {
                int prev = (k + n_sectors - 1) % n_sectors;
                if (k == 0) --passes;
                piece = out_piece[static_cast<std::size_t>(prev)][static_cast<std::size_t>(sp.in_slot)];
                k = prev;
            } else {
                piece = s.partner(piece);
                dir = 1;
            }
        }
    } while (!(k == 0 && piece == 0 && dir == 1));

    if (d.traversal_.size() != total) {
        throw Error(ErrorKind::NotAKnot, "tracing the strands yields more than one component");
    }
    d.m_ = static_cast<int>(passes);
    for (int j = 0; j < n_sectors; ++j) {
        if (d.flux_at(j) != d.m_) {
            throw Error(ErrorKind::InvariantViolation, "strand flux differs between fibers");
        }
    }
    return d;
}

AnnularDiagram parse_diagram_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t offset = 0;
    bool have_header = false;
    int strands = 0;
    std::string word;
    std::size_t word_offset = 0;
    while (std::getline(in, line)) {
        std::size_t line_offset = offset;
        offset += line.size() + 1;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        if (std::all_of(line.begin(), line.end(), is_space)) continue;
        if (!have_header) {
            auto colon = line.find(':');
            std::string key = line.substr(0, colon);
            key.erase(std::remove_if(key.begin(), key.end(), is_space), key.end());
            if (colon == std::string::npos || key != "strands") {
                throw SyntaxError(line_offset, "expected 'strands: <n>' header");
            }
            std::string value = line.substr(colon + 1);
            value.erase(std::remove_if(value.begin(), value.end(), is_space), value.end());
            auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), strands);
            if (ec != std::errc() || ptr != value.data() + value.size() || value.empty()) {
                throw SyntaxError(line_offset + colon + 1, "bad strand count '" + value + "'");
            }
            have_header = true;
            continue;
        }
        if (word.empty()) word_offset = line_offset;
        word += line;
        word += ' ';
    }
    if (!have_header) throw SyntaxError(0, "missing 'strands: <n>' header");
    MorseWord parsed;
    try {
        parsed = parse_morse_word(word);
    } catch (const SyntaxError& e) {
        throw SyntaxError(word_offset + e.position(), e.detail());
    }
    return build_diagram(parsed, strands);
}

Marking crossing_marking(const AnnularDiagram& diagram, int sector, int over, int under) {
    const Sector& s = diagram.sector(sector);
    int ip = s.pieces.at(static_cast<std::size_t>(over)).knot_index;
    int iq = s.pieces.at(static_cast<std::size_t>(under)).knot_index;
    long w = diagram.closure_passes_before(ip) - diagram.closure_passes_before(iq);
    if (ip < iq) w += diagram.m();
    return {w, std::abs(diagram.m())};
}

}  // namespace fibertrace
