#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal s-expression reader shared by all file formats. `;` starts a
// comment running to end of line.
namespace pets::sexpr {

struct Position {
    std::size_t line = 1;
    std::size_t column = 1;
};

struct Node {
    bool atom = false;
    std::string text;         // atom spelling
    std::vector<Node> items;  // list elements
    Position pos;

    bool is_list() const { return !atom; }
};

std::vector<Node> parse_all(std::string_view text);

// Exactly one expression; trailing input is an error.
Node parse_one(std::string_view text);

std::string where(const Position& pos);

}  // namespace pets::sexpr
