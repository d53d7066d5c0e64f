#include "distlaw/parse.hpp"

#include <cctype>
#include <sstream>

#include "json.hpp"

namespace distlaw {

namespace {

struct Token {
    enum Kind { Ident, LParen, RParen, Comma, At, LBrace, RBrace, Colon, Semi, Equals, End } kind;
    std::string text;
    int line, col;
};

// Two identifier classes: alphanumeric names (variables, word-like operation
// names, numeric variable labels) and symbolic names (*, +, unicode operator
// glyphs). A maximal run of one class forms a token, so "x*y" lexes as three.
bool alnum_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}
bool structural_char(char c) {
    static const std::string special = "(),@{}:;=#";
    return special.find(c) != std::string::npos;
}
bool symbol_char(char c) {
    return !std::isspace(static_cast<unsigned char>(c)) && !structural_char(c) && !alnum_char(c);
}

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    const std::string& text_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;

    void bump() {
        if (pos_ < text_.size() && text_[pos_] == '\n') { line_++; col_ = 1; }
        else col_++;
        pos_++;
    }

    void advance() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) { bump(); continue; }
            if (c == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
                continue;
            }
            break;
        }
        int l = line_, c0 = col_;
        if (pos_ >= text_.size()) { tok_ = {Token::End, "", l, c0}; return; }
        char c = text_[pos_];
        auto single = [&](Token::Kind k) { bump(); tok_ = {k, std::string(1, c), l, c0}; };
        switch (c) {
            case '(': single(Token::LParen); return;
            case ')': single(Token::RParen); return;
            case ',': single(Token::Comma); return;
            case '@': single(Token::At); return;
            case '{': single(Token::LBrace); return;
            case '}': single(Token::RBrace); return;
            case ':': single(Token::Colon); return;
            case ';': single(Token::Semi); return;
            case '=': single(Token::Equals); return;
            default: break;
        }
        size_t start = pos_;
        if (alnum_char(c)) {
            while (pos_ < text_.size() && alnum_char(text_[pos_])) bump();
        } else {
            while (pos_ < text_.size() && symbol_char(text_[pos_])) bump();
        }
        tok_ = {Token::Ident, text_.substr(start, pos_ - start), l, c0};
    }
};

[[noreturn]] void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg + " (line " + std::to_string(t.line) + ", column " +
                         std::to_string(t.col) + ")",
                     t.line, t.col);
}

class TermParser {
public:
    TermParser(Lexer& lex, const Signature& sig) : lex_(lex), sig_(sig) {}

    // term := atom | atom BINOP atom      (one infix per level, parenthesise to nest)
    Term term() {
        Term first = atom();
        if (lex_.peek().kind != Token::Ident) return first;
        // infix operator
        Token op = lex_.next();
        std::optional<Rational> param = maybe_param(op);
        Term second = atom();
        if (lex_.peek().kind == Token::Ident)
            fail(lex_.peek(), "ambiguous infix chain; add parentheses");
        return make_app(op, param, {first, second}, 2);
    }

    Term atom() {
        Token t = lex_.peek();
        if (t.kind == Token::LParen) {
            lex_.next();
            Term inner = term();
            expect(Token::RParen, ")");
            return inner;
        }
        if (t.kind != Token::Ident) fail(t, "expected a term");
        Token head = lex_.next();
        // layer-qualified heads for mixed two-theory terms: s:op and t:op
        if ((head.text == "s" || head.text == "t") && lex_.peek().kind == Token::Colon) {
            lex_.next();
            Token op = lex_.next();
            if (op.kind != Token::Ident) fail(op, "expected an operation after the layer tag");
            head.text += ":" + op.text;
        }
        std::optional<Rational> param = maybe_param(head);
        if (lex_.peek().kind == Token::LParen) {
            lex_.next();
            std::vector<Term> args;
            if (lex_.peek().kind != Token::RParen) {
                args.push_back(term());
                while (lex_.peek().kind == Token::Comma) {
                    lex_.next();
                    args.push_back(term());
                }
            }
            expect(Token::RParen, ")");
            return make_app(head, param, std::move(args), static_cast<int>(args.size()));
        }
        if (param) return make_app(head, param, {}, 0);
        auto it = sig_.ops.find(head.text);
        if (it != sig_.ops.end() && it->second.arity == 0)
            return Term::constant(head.text);
        return Term::var(head.text);
    }

private:
    Lexer& lex_;
    const Signature& sig_;

    void expect(Token::Kind k, const std::string& what) {
        Token t = lex_.next();
        if (t.kind != k) fail(t, "expected '" + what + "'");
    }

    std::optional<Rational> maybe_param(const Token& head) {
        if (lex_.peek().kind != Token::At) return std::nullopt;
        lex_.next();
        expect(Token::LBrace, "{");
        std::string text;
        while (lex_.peek().kind == Token::Ident || lex_.peek().kind == Token::Colon) {
            Token piece = lex_.next();
            text += piece.text;
        }
        // allow num/den split across tokens? '/' is an ident char, so "1/2" is one token
        expect(Token::RBrace, "}");
        try {
            return Rational::parse(text);
        } catch (const std::exception&) {
            fail(head, "bad rational parameter '" + text + "'");
        }
    }

    Term make_app(const Token& head, std::optional<Rational> param, std::vector<Term> args,
                  int arity) {
        auto it = sig_.ops.find(head.text);
        if (it == sig_.ops.end()) fail(head, "unknown symbol '" + head.text + "'");
        if (it->second.arity != arity)
            fail(head, "arity mismatch for '" + head.text + "': declared " +
                           std::to_string(it->second.arity) + ", got " + std::to_string(arity));
        if (param && !it->second.param_family)
            fail(head, "symbol '" + head.text + "' takes no parameter");
        if (!param && it->second.param_family)
            fail(head, "symbol '" + head.text + "' requires a parameter");
        return Term::app(head.text, std::move(param), std::move(args));
    }
};

} // namespace

Term parse_term(const std::string& text, const Signature& sig) {
    Lexer lex(text);
    TermParser p(lex, sig);
    Term t = p.term();
    if (lex.peek().kind != Token::End) fail(lex.peek(), "trailing input after term");
    return t;
}

TheoryPtr parse_theory(const std::string& text) {
    Lexer lex(text);
    auto expect_ident = [&](const std::string& what) {
        Token t = lex.next();
        if (t.kind != Token::Ident) fail(t, "expected " + what);
        return t;
    };
    auto expect_kind = [&](Token::Kind k, const std::string& what) {
        Token t = lex.next();
        if (t.kind != k) fail(t, "expected '" + what + "'");
        return t;
    };

    Token kw = expect_ident("'theory'");
    if (kw.text != "theory") fail(kw, "expected 'theory'");
    Token name = expect_ident("theory name");
    expect_kind(Token::LBrace, "{");

    Theory th;
    th.pres.name = name.text;
    th.pres.oracle_id = "generic";
    th.backend = BackendKind::Generic;

    // equation bodies are captured as text and reparsed once the whole
    // signature is known, so clause order in the file does not matter
    std::vector<std::tuple<std::string, std::string, Token>> eq_bodies;

    while (true) {
        Token t = lex.next();
        if (t.kind == Token::RBrace) break;
        if (t.kind == Token::End) fail(t, "unterminated theory block");
        if (t.kind != Token::Ident) fail(t, "expected a clause");
        if (t.text == "op") {
            Token opname = expect_ident("operation name");
            bool family = false;
            if (lex.peek().kind == Token::At) {
                lex.next();
                expect_kind(Token::LBrace, "{");
                expect_kind(Token::RBrace, "}");
                family = true;
            }
            expect_kind(Token::Colon, ":");
            Token ar = expect_ident("arity");
            int arity = 0;
            try {
                arity = std::stoi(ar.text);
            } catch (const std::exception&) {
                fail(ar, "bad arity '" + ar.text + "'");
            }
            if (arity < 0) fail(ar, "negative arity");
            if (th.pres.sig.declares(opname.text)) fail(opname, "duplicate symbol '" + opname.text + "'");
            th.pres.sig.add(opname.text, arity, family);
            expect_kind(Token::Semi, ";");
        } else if (t.text == "const") {
            Token cname = expect_ident("constant name");
            if (th.pres.sig.declares(cname.text)) fail(cname, "duplicate symbol '" + cname.text + "'");
            th.pres.sig.add(cname.text, 0);
            expect_kind(Token::Semi, ";");
        } else if (t.text == "eq") {
            Token ename = expect_ident("equation name");
            expect_kind(Token::Colon, ":");
            // capture raw tokens up to ';' and reparse once signature is complete
            std::string body;
            Token start = lex.peek();
            while (lex.peek().kind != Token::Semi) {
                Token piece = lex.next();
                if (piece.kind == Token::End) fail(piece, "unterminated equation");
                switch (piece.kind) {
                    case Token::LParen: body += "("; break;
                    case Token::RParen: body += ")"; break;
                    case Token::Comma: body += ","; break;
                    case Token::At: body += "@"; break;
                    case Token::LBrace: body += "{"; break;
                    case Token::RBrace: body += "}"; break;
                    case Token::Colon: body += ":"; break;
                    case Token::Equals: body += " = "; break;
                    default: body += " " + piece.text + " "; break;
                }
            }
            lex.next(); // ';'
            for (const auto& e : th.pres.eqs)
                if (e.name == ename.text) fail(ename, "duplicate equation name '" + ename.text + "'");
            eq_bodies.emplace_back(ename.text, body, start);
        } else if (t.text == "oracle") {
            Token o = expect_ident("oracle kind");
            if (o.text == "generic") {
                th.pres.oracle_id = "generic";
            } else if (o.text == "builtin") {
                Token id = expect_ident("catalog id");
                if (!is_catalog_id(id.text)) fail(id, "unknown catalog id '" + id.text + "'");
                th.pres.oracle_id = id.text;
            } else {
                fail(o, "oracle must be 'builtin ID' or 'generic'");
            }
            expect_kind(Token::Semi, ";");
        } else if (t.text == "assert") {
            Token a = expect_ident("metaproperty");
            static const std::set<std::string> vocab = {
                "consistent", "variable_faithful", "closed_terms_are_constants",
                "all_ops_unital_or_idempotent", "weak_constant_stability",
                "linear_presentation"};
            if (!vocab.count(a.text)) fail(a, "unknown metaproperty '" + a.text + "'");
            th.pres.asserts.insert(a.text);
            expect_kind(Token::Semi, ";");
        } else if (t.text == "exclude_ops") {
            while (true) {
                Token o = expect_ident("operation name");
                th.pres.exclude_ops.insert(o.text);
                if (lex.peek().kind == Token::Comma) { lex.next(); continue; }
                break;
            }
            expect_kind(Token::Semi, ";");
        } else {
            fail(t, "unknown clause '" + t.text + "'");
        }
    }

    for (auto& [ename, body, start] : eq_bodies) {
        auto eqpos = body.find(" = ");
        if (eqpos == std::string::npos) fail(start, "equation '" + ename + "' needs '='");
        Term lhs, rhs;
        try {
            lhs = parse_term(body.substr(0, eqpos), th.pres.sig);
            rhs = parse_term(body.substr(eqpos + 3), th.pres.sig);
        } catch (const ParseError& e) {
            throw ParseError("in equation '" + ename + "': " + e.what(), start.line, start.col);
        }
        th.pres.eqs.push_back({ename, lhs, rhs});
    }

    if (th.pres.oracle_id != "generic") {
        TheoryPtr cat = load_catalog(th.pres.oracle_id);
        // the binding only makes sense if the file's signature is the catalog one
        if (cat->sig().ops != th.pres.sig.ops)
            throw ParseError("oracle builtin " + th.pres.oracle_id +
                             " requires the catalog signature (use render_theory to see it)");
        Theory bound = *cat;
        bound.pres.name = th.pres.name;
        bound.pres.eqs = th.pres.eqs.empty() ? cat->pres.eqs : th.pres.eqs;
        bound.pres.asserts = th.pres.asserts;
        bound.pres.exclude_ops = th.pres.exclude_ops;
        bound.pres.oracle_id = th.pres.oracle_id;
        return Theory::finalize(std::move(bound));
    }
    return Theory::finalize(std::move(th));
}

std::string render_theory(const Theory& th, RenderFormat fmt) {
    if (fmt == RenderFormat::Text) {
        std::ostringstream out;
        out << "theory " << th.name() << " {\n";
        for (const auto& [opname, info] : th.sig().ops) {
            if (info.arity == 0)
                out << "  const " << opname << ";\n";
            else
                out << "  op " << opname << (info.param_family ? "@{}" : "") << " : "
                    << info.arity << ";\n";
        }
        for (const auto& e : th.eqs())
            out << "  eq " << e.name << ": " << e.lhs.str() << " = " << e.rhs.str() << ";\n";
        if (th.pres.oracle_id != "generic")
            out << "  oracle builtin " << th.pres.oracle_id << ";\n";
        else
            out << "  oracle generic;\n";
        for (const auto& a : th.pres.asserts) out << "  assert " << a << ";\n";
        if (!th.pres.exclude_ops.empty()) {
            out << "  exclude_ops ";
            bool first = true;
            for (const auto& o : th.pres.exclude_ops) {
                if (!first) out << ", ";
                out << o;
                first = false;
            }
            out << ";\n";
        }
        out << "}\n";
        return out.str();
    }
    nlohmann::json j;
    j["name"] = th.name();
    j["ops"] = nlohmann::json::array();
    for (const auto& [opname, info] : th.sig().ops) {
        nlohmann::json op;
        op["name"] = opname;
        op["arity"] = info.arity;
        if (info.param_family) op["param_family"] = true;
        j["ops"].push_back(op);
    }
    j["eqs"] = nlohmann::json::array();
    for (const auto& e : th.eqs())
        j["eqs"].push_back({{"name", e.name}, {"lhs", e.lhs.str()}, {"rhs", e.rhs.str()}});
    j["asserts"] = nlohmann::json::array();
    for (const auto& a : th.pres.asserts) j["asserts"].push_back(a);
    j["oracle"] = th.pres.oracle_id;
    return j.dump(2);
}

} // namespace distlaw
