#include "omega/hoa.hpp"
#include "omega/error.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace omega {
namespace {

using K = SemanticError::Kind;

struct Token {
    enum class Type { Header, Int, String, Ident, Punct, BodyMark, EndMark, Eof } type;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view src) {
    std::vector<Token> out;
    std::size_t line = 1, col = 1, i = 0;
    auto advance = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    while (i < src.size()) {
        const char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            const auto end = src.find("*/", i + 2);
            if (end == std::string_view::npos) throw ParseError("unterminated comment", line, col);
            advance(end + 2 - i);
            continue;
        }
        const std::size_t l = line, cl = col;
        if (src.substr(i, 8) == "--BODY--") {
            out.push_back({Token::Type::BodyMark, "--BODY--", l, cl});
            advance(8);
        } else if (src.substr(i, 7) == "--END--") {
            out.push_back({Token::Type::EndMark, "--END--", l, cl});
            advance(7);
        } else if (c == '"') {
            std::string s;
            advance(1);
            while (i < src.size() && src[i] != '"') {
                if (src[i] == '\\' && i + 1 < src.size()) advance(1);
                if (src[i] == '\n') throw ParseError("newline inside string", l, cl);
                s += src[i];
                advance(1);
            }
            if (i >= src.size()) throw ParseError("unterminated string", l, cl);
            advance(1);
            out.push_back({Token::Type::String, s, l, cl});
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            out.push_back({Token::Type::Int, std::string(src.substr(i, j - i)), l, cl});
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '-'))
                ++j;
            if (j < src.size() && src[j] == ':') {
                out.push_back({Token::Type::Header, std::string(src.substr(i, j - i)), l, cl});
                advance(j + 1 - i);
            } else {
                out.push_back({Token::Type::Ident, std::string(src.substr(i, j - i)), l, cl});
                advance(j - i);
            }
        } else if (std::string_view("[]{}()|&!").find(c) != std::string_view::npos) {
            out.push_back({Token::Type::Punct, std::string(1, c), l, cl});
            advance(1);
        } else {
            throw ParseError(std::string("unexpected character '") + c + "'", l, cl);
        }
    }
    out.push_back({Token::Type::Eof, "", line, col});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

    Nba parse() {
        Nba a;
        expect_header("HOA");
        const auto& ver = next();
        if (ver.type != Token::Type::Ident || ver.text != "v1") fail(ver, "expected format version v1");

        std::optional<std::size_t> states, start, ap_count;
        bool saw_acceptance = false;
        bool gfm = false;
        while (peek().type == Token::Type::Header) {
            const auto h = next();
            if (h.text == "States") {
                states = integer();
            } else if (h.text == "Start") {
                if (start) fail(h, "multiple Start headers (alternating or multiple initial states are unsupported)");
                start = integer();
                if (peek().type == Token::Type::Punct && peek().text == "&")
                    fail(peek(), "conjunctive initial states are unsupported");
            } else if (h.text == "AP") {
                ap_count = integer();
                while (peek().type == Token::Type::String) a.alphabet.push_back(next().text);
                if (a.alphabet.size() != *ap_count)
                    fail(h, "AP count does not match the number of proposition names");
            } else if (h.text == "Acceptance") {
                saw_acceptance = true;
                parse_acceptance(h);
            } else if (h.text == "acc-name") {
                const auto& n = next();
                if (n.text != "Buchi")
                    throw SemanticError(K::NonBuchiAcceptance,
                                        "acc-name '" + n.text + "' is not supported; only Buchi acceptance is");
                skip_values();
            } else if (h.text == "properties") {
                while (peek().type == Token::Type::Ident) {
                    const auto& p = next();
                    if (p.text == "gfm") gfm = true;
                }
            } else if (std::isupper(static_cast<unsigned char>(h.text[0]))) {
                if (h.text == "Alias") fail(h, "Alias headers are unsupported");
                fail(h, "unsupported header '" + h.text + ":'");
            } else {
                skip_values();
            }
        }
        if (!states) fail(peek(), "missing States header");
        if (!start) fail(peek(), "missing Start header");
        if (!saw_acceptance) throw SemanticError(K::NonBuchiAcceptance, "missing Acceptance header");
        a.num_states = *states;
        a.initial = *start;
        if (a.initial >= a.num_states)
            throw SemanticError(K::UndeclaredState, "Start state " + std::to_string(a.initial) + " is not declared");

        if (peek().type != Token::Type::BodyMark) fail(peek(), "expected --BODY--");
        next();
        std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> where;
        while (peek().type == Token::Type::Header && peek().text == "State") {
            const auto st = next();
            if (peek().type == Token::Type::Punct && peek().text == "[")
                throw SemanticError(K::UnsupportedLabel, "state labels are unsupported; label the edges instead");
            const std::size_t q = integer();
            if (q >= a.num_states)
                throw SemanticError(K::UndeclaredState, "State " + std::to_string(q) + " is not declared");
            if (peek().type == Token::Type::String) next();
            if (peek().type == Token::Type::Punct && peek().text == "{")
                throw SemanticError(K::StateBasedAcceptance,
                                    "state-based acceptance marks on State " + std::to_string(q) +
                                        " are unsupported; move the {0} mark onto the outgoing edges");
            while (peek().type == Token::Type::Punct && peek().text == "[") {
                const auto symbols = label(a.alphabet.size());
                const std::size_t target = integer_token("edge target");
                if (target >= a.num_states)
                    throw SemanticError(K::UndeclaredState,
                                        "edge target " + std::to_string(target) + " is not declared");
                if (peek().type == Token::Type::Punct && peek().text == "&")
                    fail(peek(), "universal branching is unsupported");
                bool acc = false;
                if (peek().type == Token::Type::Punct && peek().text == "{") {
                    next();
                    while (peek().type == Token::Type::Int) {
                        const auto& m = next();
                        if (m.text != "0")
                            throw SemanticError(K::NonBuchiAcceptance,
                                                "acceptance mark {" + m.text + "}: only set 0 exists");
                        acc = true;
                    }
                    expect_punct("}");
                }
                for (auto s : symbols) {
                    auto [it, fresh] = where.try_emplace({q, s, target}, a.transitions.size());
                    if (fresh)
                        a.transitions.push_back({q, s, target, acc});
                    else
                        a.transitions[it->second].accepting |= acc;
                }
            }
            if (peek().type == Token::Type::Int)
                throw SemanticError(K::UnsupportedLabel, "implicit (unlabelled) edges are unsupported");
        }
        if (peek().type != Token::Type::EndMark) fail(peek(), "expected State: or --END--");
        next();
        if (peek().type != Token::Type::Eof) fail(peek(), "trailing content after --END--");

        a.gfm_asserted = gfm || is_deterministic(a);
        a.check_invariants();
        return a;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& t, const std::string& msg) const { throw ParseError(msg, t.line, t.column); }

    void expect_header(std::string_view name) {
        const auto& t = next();
        if (t.type != Token::Type::Header || t.text != name) fail(t, "expected '" + std::string(name) + ":'");
    }

    void expect_punct(std::string_view p) {
        const auto& t = next();
        if (t.type != Token::Type::Punct || t.text != p) fail(t, "expected '" + std::string(p) + "'");
    }

    std::size_t integer() { return integer_token("integer"); }

    std::size_t integer_token(const char* what) {
        const auto& t = next();
        if (t.type != Token::Type::Int) fail(t, std::string("expected ") + what);
        return std::stoul(t.text);
    }

    void skip_values() {
        while (peek().type != Token::Type::Header && peek().type != Token::Type::BodyMark &&
               peek().type != Token::Type::Eof)
            next();
    }

    void parse_acceptance(const Token& h) {
        // Exactly "1 Inf(0)".
        const auto& n = next();
        if (n.type != Token::Type::Int) fail(n, "expected the number of acceptance sets");
        std::string cond;
        while (peek().type == Token::Type::Ident || peek().type == Token::Type::Int ||
               (peek().type == Token::Type::Punct && std::string_view("()|&!").find(peek().text) != std::string_view::npos))
            cond += next().text;
        if (n.text != "1" || cond != "Inf(0)")
            throw SemanticError(K::NonBuchiAcceptance, "acceptance condition '" + n.text + " " + cond +
                                                           "' is not Buchi; expected 'Acceptance: 1 Inf(0)'");
        (void)h;
    }

    std::vector<std::size_t> label(std::size_t num_symbols) {
        expect_punct("[");
        std::vector<std::size_t> out;
        for (;;) {
            const auto& t = next();
            if (t.type == Token::Type::Ident && t.text == "t") {
                for (std::size_t s = 0; s < num_symbols; ++s) out.push_back(s);
            } else if (t.type == Token::Type::Int) {
                const auto s = std::stoul(t.text);
                if (s >= num_symbols)
                    throw SemanticError(K::UnsupportedLabel, "label refers to undeclared proposition " + t.text);
                out.push_back(s);
            } else if (t.type == Token::Type::Punct && (t.text == "!" || t.text == "&" || t.text == "(")) {
                throw SemanticError(K::UnsupportedLabel,
                                    "label operator '" + t.text +
                                        "' is unsupported; write labels as a proposition or a disjunction of propositions");
            } else {
                fail(t, "expected a proposition index or 't' in label");
            }
            const auto& sep = next();
            if (sep.type == Token::Type::Punct && sep.text == "]") break;
            if (sep.type == Token::Type::Punct && sep.text == "|") continue;
            if (sep.type == Token::Type::Punct && sep.text == "&")
                throw SemanticError(K::UnsupportedLabel, "conjunctive labels are unsupported");
            fail(sep, "expected '|' or ']' in label");
        }
        return out;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + '"';
}

}  // namespace

Nba parse_hoa(std::string_view text) { return Parser(tokenize(text)).parse(); }

Nba load_hoa(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_hoa(ss.str());
}

std::string serialize_hoa(const Nba& a) {
    std::ostringstream os;
    os << "HOA: v1\n";
    os << "States: " << a.num_states << "\n";
    os << "Start: " << a.initial << "\n";
    os << "AP: " << a.alphabet.size();
    for (const auto& s : a.alphabet) os << ' ' << quote(s);
    os << "\n";
    os << "acc-name: Buchi\n";
    os << "Acceptance: 1 Inf(0)\n";
    os << "properties: trans-labels explicit-labels trans-acc";
    if (a.gfm_asserted && !is_deterministic(a)) os << " gfm";
    os << "\n--BODY--\n";
    for (std::size_t q = 0; q < a.num_states; ++q) {
        os << "State: " << q << "\n";
        for (const auto& t : a.transitions) {
            if (t.source != q) continue;
            os << '[' << t.symbol << "] " << t.target;
            if (t.accepting) os << " {0}";
            os << "\n";
        }
    }
    os << "--END--\n";
    return os.str();
}

}  // namespace omega
