#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "fibertrace/diagram.hpp"
#include "fibertrace/errors.hpp"
#include "generators.hpp"

using namespace fibertrace;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvariantViolation;
}

}  // namespace

TEST_CASE("tokens parse and print") {
    auto w = parse_morse_word("  s1 S12\tcap3 cup1 ");
    REQUIRE(w.tokens.size() == 4);
    CHECK(w.tokens[0].kind == TokenKind::Crossing);
    CHECK(w.tokens[0].sign == 1);
    CHECK(w.tokens[1].sign == -1);
    CHECK(w.tokens[1].slot == 12);
    CHECK(w.tokens[2].kind == TokenKind::Cap);
    CHECK(w.tokens[3].kind == TokenKind::Cup);
    CHECK(w.to_string() == "s1 S12 cap3 cup1");
}

TEST_CASE("syntax errors carry the offending offset") {
    try {
        parse_morse_word("s1 x2");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 3);
        CHECK(e.kind() == ErrorKind::Syntax);
    }
    CHECK_THROWS_AS(parse_morse_word("s"), SyntaxError);
    CHECK_THROWS_AS(parse_morse_word("cap-1"), SyntaxError);
    CHECK(kind_of([] { parse_morse_word("s0"); }) == ErrorKind::Slot);
}

TEST_CASE("validation errors") {
    CHECK(kind_of([] { build_diagram(parse_morse_word("s1"), 3); }) == ErrorKind::NotAKnot);
    CHECK(kind_of([] { build_diagram(parse_morse_word("s3"), 3); }) == ErrorKind::SlotMismatch);
    CHECK(kind_of([] { build_diagram(parse_morse_word("cup1"), 1); }) == ErrorKind::NotClosed);
    CHECK(kind_of([] { build_diagram(MorseWord{}, 2); }) == ErrorKind::EmptyWord);
    CHECK(kind_of([] { build_diagram(parse_morse_word("cap1"), 1); }) == ErrorKind::SlotMismatch);
}

TEST_CASE("closed braids") {
    auto d = build_diagram(parse_morse_word("s3 s2 s1"), 4);
    CHECK(d.m() == 4);
    CHECK(d.is_closed_braid());
    CHECK(d.sector_count() == 3);
    CHECK(d.max_strands() == 4);
    for (const auto& s : d.sectors()) {
        CHECK(s.pieces.size() == 4);
        for (const auto& p : s.pieces) CHECK(p.direction == 1);
    }
    CHECK(d.traversal().size() == 12);
}

TEST_CASE("long trefoil has linking number one") {
    auto d = build_diagram(parse_morse_word("cup2 s1 s1 s1 cap2"), 1);
    CHECK(std::abs(d.m()) == 1);
    CHECK_FALSE(d.is_closed_braid());
    CHECK(d.max_strands() == 3);
}

TEST_CASE("file format") {
    auto d = parse_diagram_text("# comment\nstrands: 4\ns1 s3 s2   # first half\ns1 s3 s2\nS3 S2 S3\n");
    CHECK(d.word().tokens.size() == 9);
    CHECK(d.strands() == 4);
    CHECK(parse_diagram_text(d.to_text()) == d);
    CHECK_THROWS_AS(parse_diagram_text("s1 s2\n"), SyntaxError);
    try {
        parse_diagram_text("strands: 3\ns1 q2\n");
        FAIL("expected a syntax error");
    } catch (const SyntaxError& e) {
        CHECK(e.position() == 14);
    }
}

TEST_CASE("traversal visits every piece once and follows directions") {
    std::mt19937 rng(5);
    int built = 0;
    for (int trial = 0; trial < 60; ++trial) {
        auto d = trial % 2 ? testing::random_closed_braid(rng, 3 + trial % 3, 10)
                           : testing::random_morse_knot(rng, 1 + trial % 3, 1 + trial % 2, 4);
        if (!d) continue;
        ++built;
        std::set<std::pair<int, int>> seen;
        for (std::size_t i = 0; i < d->traversal().size(); ++i) {
            const auto& ref = d->traversal()[i];
            CHECK(seen.insert({ref.sector, ref.piece}).second);
            CHECK(d->sector(ref.sector).pieces[static_cast<std::size_t>(ref.piece)].knot_index == static_cast<int>(i));
        }
        std::size_t pieces = 0;
        for (const auto& s : d->sectors()) pieces += s.pieces.size();
        CHECK(seen.size() == pieces);
        // every fiber carries the same net flux
        for (int k = 0; k < d->sector_count(); ++k) CHECK(d->flux_at(k) == d->m());
        CHECK(parse_diagram_text(d->to_text()) == *d);
    }
    CHECK(built > 40);
}
