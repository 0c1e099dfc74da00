#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace fibertrace {

enum class TokenKind { Crossing, Cap, Cup };

struct Token {
    TokenKind kind = TokenKind::Crossing;
    int slot = 1;  // 1-based
    int sign = 1;  // crossings only: +1 for s<i>, -1 for S<i>

    std::string text() const;
    friend bool operator==(const Token&, const Token&) = default;
};

struct MorseWord {
    std::vector<Token> tokens;

    std::string to_string() const;
    friend bool operator==(const MorseWord&, const MorseWord&) = default;
};

// Tokens `s<i>`, `S<i>`, `cap<i>`, `cup<i>` separated by ASCII whitespace.
MorseWord parse_morse_word(std::string_view text);

// One strand segment inside a sector. Slots are 0-based here.
struct StrandPiece {
    int in_slot = -1;   // -1 if born at a cup inside this sector
    int out_slot = -1;  // -1 if it ends at a cap inside this sector
    int direction = 1;  // +1 if the knot runs toward increasing phi
    int knot_index = 0; // position in the knot traversal

    friend bool operator==(const StrandPiece&, const StrandPiece&) = default;
};

struct Sector {
    int index = 0;
    Token token;
    int count_in = 0;
    int count_out = 0;
    // Through pieces ordered by in_slot, then cup-born pieces ordered by out_slot.
    std::vector<StrandPiece> pieces;

    // Cap or cup partner of a piece, or -1.
    int partner(int piece) const;
    bool is_cusp_pair(int p, int q) const;
    friend bool operator==(const Sector&, const Sector&) = default;
};

struct PieceRef {
    int sector = 0;
    int piece = 0;
    friend bool operator==(const PieceRef&, const PieceRef&) = default;
};

struct Marking {
    long winding = 0;  // raw integer winding of the smoothed component
    int modulus = 0;   // |m|

    long residue() const;
    // Residue for |m| >= 2, the integer itself for m = 0 and the raw winding for |m| = 1.
    long label() const;
};

class AnnularDiagram {
public:
    const MorseWord& word() const { return word_; }
    int strands() const { return strands_; }
    int m() const { return m_; }
    int max_strands() const;
    const std::vector<Sector>& sectors() const { return sectors_; }
    const Sector& sector(int k) const { return sectors_.at(static_cast<std::size_t>(k)); }
    int sector_count() const { return static_cast<int>(sectors_.size()); }
    // Knot traversal order; traversal()[i] has knot_index i.
    const std::vector<PieceRef>& traversal() const { return traversal_; }
    // Net signed passes through fiber 0 before reaching traversal position i.
    long closure_passes_before(int i) const { return passes_before_.at(static_cast<std::size_t>(i)); }
    bool is_closed_braid() const;
    // Net signed strand count at the start fiber of sector k.
    int flux_at(int k) const;

    std::string to_text() const;

    friend AnnularDiagram build_diagram(const MorseWord& word, int strands);
    friend bool operator==(const AnnularDiagram&, const AnnularDiagram&);

private:
    MorseWord word_;
    int strands_ = 0;
    int m_ = 0;
    std::vector<Sector> sectors_;
    std::vector<PieceRef> traversal_;
    std::vector<long> passes_before_;
};

AnnularDiagram build_diagram(const MorseWord& word, int strands);

// Reads the file format: a `strands: <n>` line and the word, `#` comments allowed.
AnnularDiagram parse_diagram_text(std::string_view text);

// Marking of the crossing where piece `over` passes over piece `under`, both in sector k.
Marking crossing_marking(const AnnularDiagram& diagram, int sector, int over, int under);

}  // namespace fibertrace
