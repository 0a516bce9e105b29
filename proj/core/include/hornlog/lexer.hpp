#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hornlog/ast.hpp"

namespace hornlog {

class ParseError : public std::runtime_error {
public:
    ParseError(SourceLoc loc, const std::string& message);

    SourceLoc loc() const { return loc_; }
    /// The message without the "line:column: " prefix.
    const std::string& detail() const { return detail_; }

private:
    SourceLoc loc_;
    std::string detail_;
};

enum class TokenKind {
    Ident,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Star,
    Arrow,    // ->
    Implies,  // =>
    Amp,
    Bang,
    Equal,
    End,
};

const char* token_name(TokenKind k);

struct Token {
    TokenKind kind = TokenKind::End;
    std::string text;
    SourceLoc loc;
};

/// Identifiers are [A-Za-z_][A-Za-z0-9_#]*. A '#' that starts a token opens a
/// comment running to the end of the line.
std::vector<Token> tokenize(std::string_view text);

/// Cursor over a token vector with the usual expect/accept helpers.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    bool at(TokenKind k, std::size_t ahead = 0) const { return peek(ahead).kind == k; }
    bool at_keyword(std::string_view word) const { return at(TokenKind::Ident) && peek().text == word; }
    const Token& next();
    bool accept(TokenKind k);
    const Token& expect(TokenKind k);
    const Token& expect_ident();
    [[noreturn]] void fail(const std::string& message) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace hornlog
