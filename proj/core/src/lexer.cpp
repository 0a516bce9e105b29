#include "hornlog/lexer.hpp"

#include <cctype>

namespace hornlog {

ParseError::ParseError(SourceLoc loc, const std::string& message)
    : std::runtime_error(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + message),
      loc_(loc),
      detail_(message) {}

const char* token_name(TokenKind k) {
    switch (k) {
        case TokenKind::Ident: return "identifier";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
        case TokenKind::Comma: return "','";
        case TokenKind::Semi: return "';'";
        case TokenKind::Colon: return "':'";
        case TokenKind::Star: return "'*'";
        case TokenKind::Arrow: return "'->'";
        case TokenKind::Implies: return "'=>'";
        case TokenKind::Amp: return "'&'";
        case TokenKind::Bang: return "'!'";
        case TokenKind::Equal: return "'='";
        case TokenKind::End: return "end of input";
    }
    return "?";
}

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#'; }

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::uint32_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '#') {
            while (i < text.size() && text[i] != '\n') advance(1);
            continue;
        }
        SourceLoc loc{line, col};
        if (ident_start(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j])) ++j;
            out.push_back(Token{TokenKind::Ident, std::string(text.substr(i, j - i)), loc});
            advance(j - i);
            continue;
        }
        auto two = text.substr(i, 2);
        if (two == "->" || two == "=>") {
            out.push_back(Token{two == "->" ? TokenKind::Arrow : TokenKind::Implies, std::string(two), loc});
            advance(2);
            continue;
        }
        TokenKind k;
        switch (c) {
            case '(': k = TokenKind::LParen; break;
            case ')': k = TokenKind::RParen; break;
            case ',': k = TokenKind::Comma; break;
            case ';': k = TokenKind::Semi; break;
            case ':': k = TokenKind::Colon; break;
            case '*': k = TokenKind::Star; break;
            case '&': k = TokenKind::Amp; break;
            case '!': k = TokenKind::Bang; break;
            case '=': k = TokenKind::Equal; break;
            default: throw ParseError(loc, std::string("unexpected character '") + c + "'");
        }
        out.push_back(Token{k, std::string(1, c), loc});
        advance(1);
    }
    out.push_back(Token{TokenKind::End, "", SourceLoc{line, col}});
    return out;
}

const Token& TokenStream::peek(std::size_t ahead) const {
    const auto i = std::min(pos_ + ahead, tokens_.size() - 1);
    return tokens_[i];
}

const Token& TokenStream::next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
}

bool TokenStream::accept(TokenKind k) {
    if (!at(k)) return false;
    next();
    return true;
}

const Token& TokenStream::expect(TokenKind k) {
    if (!at(k)) fail(std::string("expected ") + token_name(k) + ", found " + token_name(peek().kind));
    return next();
}

const Token& TokenStream::expect_ident() { return expect(TokenKind::Ident); }

void TokenStream::fail(const std::string& message) const { throw ParseError(peek().loc, message); }

}  // namespace hornlog
