#include "pets/sexpr.hpp"

#include <cctype>

#include "pets/error.hpp"

namespace pets::sexpr {

std::string where(const Position& pos) {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column);
}

namespace {

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    bool at_end() {
        skip_blank();
        return i_ >= text_.size();
    }

    Node read() {
        skip_blank();
        if (i_ >= text_.size()) fail("unexpected end of input");
        Node node;
        node.pos = pos_;
        char c = text_[i_];
        if (c == ')') fail("unexpected ')'");
        if (c == '(') {
            advance();
            for (;;) {
                skip_blank();
                if (i_ >= text_.size()) fail("unterminated list opened at " + where(node.pos));
                if (text_[i_] == ')') {
                    advance();
                    break;
                }
                node.items.push_back(read());
            }
            return node;
        }
        node.atom = true;
        while (i_ < text_.size()) {
            c = text_[i_];
            if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';')
                break;
            node.text.push_back(c);
            advance();
        }
        return node;
    }

private:
    void advance() {
        if (text_[i_] == '\n') {
            ++pos_.line;
            pos_.column = 1;
        } else {
            ++pos_.column;
        }
        ++i_;
    }

    void skip_blank() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == ';') {
                while (i_ < text_.size() && text_[i_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::parse, where(pos_) + ": " + msg);
    }

    std::string_view text_;
    std::size_t i_ = 0;
    Position pos_;
};

}  // namespace

std::vector<Node> parse_all(std::string_view text) {
    Reader reader(text);
    std::vector<Node> out;
    while (!reader.at_end()) out.push_back(reader.read());
    return out;
}

Node parse_one(std::string_view text) {
    Reader reader(text);
    Node node = reader.read();
    if (!reader.at_end()) throw Error(ErrorKind::parse, "trailing input after expression");
    return node;
}

}  // namespace pets::sexpr
