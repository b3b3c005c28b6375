#include "pclab/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pclab::dsl {

namespace {

// ---------------------------------------------------------------------------
// Lexer

struct Token {
    enum class Kind { integer, name, xvar, tvar, plus, minus, star, slash, caret, lparen, rparen, comma, end };
    Kind kind;
    Int value;         // integer
    std::string text;  // name
    int var_index = 0; // xvar
    int line = 1;
    int col = 1;
};

const char* token_name(Token::Kind k) {
    switch (k) {
        case Token::Kind::integer: return "integer";
        case Token::Kind::name: return "name";
        case Token::Kind::xvar: return "variable";
        case Token::Kind::tvar: return "'t'";
        case Token::Kind::plus: return "'+'";
        case Token::Kind::minus: return "'-'";
        case Token::Kind::star: return "'*'";
        case Token::Kind::slash: return "'/'";
        case Token::Kind::caret: return "'^'";
        case Token::Kind::lparen: return "'('";
        case Token::Kind::rparen: return "')'";
        case Token::Kind::comma: return "','";
        case Token::Kind::end: return "end of input";
    }
    return "?";
}

std::vector<Token> lex(const std::string& raw) {
    // normalize the unicode minus to ASCII before scanning
    std::string s;
    s.reserve(raw.size());
    for (size_t i = 0; i < raw.size();) {
        if (i + 2 < raw.size() && static_cast<unsigned char>(raw[i]) == 0xE2 &&
            static_cast<unsigned char>(raw[i + 1]) == 0x88 &&
            static_cast<unsigned char>(raw[i + 2]) == 0x92) {
            s += '-';
            i += 3;
        } else {
            s += raw[i++];
        }
    }
    std::vector<Token> out;
    int line = 1, col = 1;
    size_t i = 0;
    auto push = [&](Token::Kind k) {
        out.push_back({k, Int(0), "", 0, line, col});
    };
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\n') {
            ++line;
            col = 1;
            ++i;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++col;
            ++i;
            continue;
        }
        const int tok_col = col;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
            Token t{Token::Kind::integer, Int(s.substr(i, j - i)), "", 0, line, tok_col};
            out.push_back(std::move(t));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t j = i;
            while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])))) ++j;
            std::string word = s.substr(i, j - i);
            Token t;
            t.line = line;
            t.col = tok_col;
            if (word == "t") {
                t.kind = Token::Kind::tvar;
            } else if (word.size() > 1 && word[0] == 'x' &&
                       std::all_of(word.begin() + 1, word.end(),
                                   [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
                t.kind = Token::Kind::xvar;
                t.var_index = std::stoi(word.substr(1));
                if (t.var_index < 1)
                    throw ParseError(line, tok_col, "variable index must be >= 1");
            } else {
                t.kind = Token::Kind::name;
                t.text = std::move(word);
            }
            out.push_back(std::move(t));
            col += static_cast<int>(j - i);
            i = j;
            continue;
        }
        switch (c) {
            case '+': push(Token::Kind::plus); break;
            case '-': push(Token::Kind::minus); break;
            case '*': push(Token::Kind::star); break;
            case '/': push(Token::Kind::slash); break;
            case '^': push(Token::Kind::caret); break;
            case '(': push(Token::Kind::lparen); break;
            case ')': push(Token::Kind::rparen); break;
            case ',': push(Token::Kind::comma); break;
            default:
                throw ParseError(line, col, std::string("unexpected character '") + c + "'");
        }
        ++col;
        ++i;
    }
    out.push_back({Token::Kind::end, Int(0), "", 0, line, col});
    return out;
}

// ---------------------------------------------------------------------------
// Parser

constexpr const char* kBuiltins[] = {"log1p", "expseries", "gapfact", "hadamard",
                                     "conj",  "abs2",      "line",    "affine"};

bool is_builtin(const std::string& name) {
    for (const char* b : kBuiltins)
        if (name == b) return true;
    return false;
}

class Parser {
   public:
    Parser(std::vector<Token> tokens, int m) : tokens_(std::move(tokens)), m_(m) {}

    AstPtr run() {
        AstPtr e = expr();
        expect(Token::Kind::end, "operator or end of input");
        return e;
    }

   private:
    const Token& peek() const { return tokens_[pos_]; }
    Token take() { return tokens_[pos_++]; }

    [[noreturn]] void fail(const std::string& expected) {
        const Token& t = peek();
        throw ParseError(t.line, t.col,
                         std::string("unexpected ") + token_name(t.kind) +
                             (t.kind == Token::Kind::name ? " '" + t.text + "'" : ""),
                         expected);
    }

    Token expect(Token::Kind k, const std::string& expected) {
        if (peek().kind != k) fail(expected);
        return take();
    }

    AstPtr expr() {
        AstPtr lhs = term();
        while (peek().kind == Token::Kind::plus || peek().kind == Token::Kind::minus) {
            const char op = take().kind == Token::Kind::plus ? '+' : '-';
            AstPtr rhs = term();
            auto node = std::make_shared<Ast>();
            node->kind = Ast::Kind::binary;
            node->op = op;
            node->args = {lhs, rhs};
            lhs = std::move(node);
        }
        return lhs;
    }

    AstPtr term() {
        AstPtr lhs = unary();
        while (peek().kind == Token::Kind::star || peek().kind == Token::Kind::slash) {
            const char op = take().kind == Token::Kind::star ? '*' : '/';
            AstPtr rhs = unary();
            auto node = std::make_shared<Ast>();
            node->kind = Ast::Kind::binary;
            node->op = op;
            node->args = {lhs, rhs};
            lhs = std::move(node);
        }
        return lhs;
    }

    AstPtr unary() {
        if (peek().kind == Token::Kind::minus) {
            take();
            auto node = std::make_shared<Ast>();
            node->kind = Ast::Kind::negate;
            node->args = {unary()};
            return node;
        }
        return factor();
    }

    AstPtr factor() {
        AstPtr b = base();
        if (peek().kind == Token::Kind::caret) {
            take();
            Token e = expect(Token::Kind::integer, "non-negative integer exponent");
            auto node = std::make_shared<Ast>();
            node->kind = Ast::Kind::power;
            node->exponent = e.value.get_ui();
            node->args = {b};
            return node;
        }
        return b;
    }

    AstPtr base() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Kind::integer: {
                auto node = std::make_shared<Ast>();
                node->kind = Ast::Kind::number;
                node->number = take().value;
                return node;
            }
            case Token::Kind::tvar: {
                take();
                if (m_ != 1)
                    throw ArityError("'t' is the univariate variable; declared arity is m = " +
                                     std::to_string(m_) + " (at " + std::to_string(t.line) + ":" +
                                     std::to_string(t.col) + ")");
                auto node = std::make_shared<Ast>();
                node->kind = Ast::Kind::var;
                node->var_index = 0;
                return node;
            }
            case Token::Kind::xvar: {
                Token v = take();
                if (v.var_index > m_)
                    throw ArityError("variable x" + std::to_string(v.var_index) +
                                     " exceeds declared arity m = " + std::to_string(m_) + " (at " +
                                     std::to_string(v.line) + ":" + std::to_string(v.col) + ")");
                auto node = std::make_shared<Ast>();
                node->kind = Ast::Kind::var;
                node->var_index = v.var_index;
                return node;
            }
            case Token::Kind::name: {
                Token n = take();
                if (n.text == "zeta") {
                    expect(Token::Kind::lparen, "'(' after zeta");
                    Token arg = expect(Token::Kind::integer, "positive integer conductor");
                    expect(Token::Kind::rparen, "')'");
                    if (arg.value < 1) throw ParseError(arg.line, arg.col, "zeta needs n >= 1");
                    auto node = std::make_shared<Ast>();
                    node->kind = Ast::Kind::zeta;
                    node->zeta_n = arg.value.get_ui();
                    return node;
                }
                if (!is_builtin(n.text))
                    throw ParseError(n.line, n.col, "unknown name '" + n.text + "'",
                                     "zeta, log1p, expseries, gapfact, hadamard, conj, abs2, line, affine");
                expect(Token::Kind::lparen, "'(' after builtin name");
                auto node = std::make_shared<Ast>();
                node->kind = Ast::Kind::call;
                node->call_name = n.text;
                if (peek().kind != Token::Kind::rparen) {
                    node->args.push_back(expr());
                    while (peek().kind == Token::Kind::comma) {
                        take();
                        node->args.push_back(expr());
                    }
                }
                expect(Token::Kind::rparen, "')' or ','");
                return node;
            }
            case Token::Kind::lparen: {
                take();
                AstPtr e = expr();
                expect(Token::Kind::rparen, "')'");
                return e;
            }
            default: fail("a value: integer, zeta(n), variable, builtin call, or '('");
        }
    }

    std::vector<Token> tokens_;
    size_t pos_ = 0;
    int m_;
};

}  // namespace

AstPtr parse(const std::string& expr, int m) { return Parser(lex(expr), m).run(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_to(const AstPtr& a, std::ostringstream& os) {
    switch (a->kind) {
        case Ast::Kind::number: os << a->number.get_str(); break;
        case Ast::Kind::zeta: os << "zeta(" << a->zeta_n << ")"; break;
        case Ast::Kind::var:
            if (a->var_index == 0)
                os << "t";
            else
                os << "x" << a->var_index;
            break;
        case Ast::Kind::call: {
            os << a->call_name << "(";
            for (size_t i = 0; i < a->args.size(); ++i) {
                if (i) os << ", ";
                render_to(a->args[i], os);
            }
            os << ")";
            break;
        }
        case Ast::Kind::negate:
            os << "-";
            if (a->args[0]->kind == Ast::Kind::binary) {
                os << "(";
                render_to(a->args[0], os);
                os << ")";
            } else {
                render_to(a->args[0], os);
            }
            break;
        case Ast::Kind::binary:
            os << "(";
            render_to(a->args[0], os);
            os << " " << a->op << " ";
            render_to(a->args[1], os);
            os << ")";
            break;
        case Ast::Kind::power: {
            const Ast::Kind bk = a->args[0]->kind;
            const bool simple = bk == Ast::Kind::number || bk == Ast::Kind::zeta ||
                                bk == Ast::Kind::var || bk == Ast::Kind::call;
            if (!simple) os << "(";
            render_to(a->args[0], os);
            if (!simple) os << ")";
            os << "^" << a->exponent;
            break;
        }
    }
}

}  // namespace

std::string render(const AstPtr& ast) {
    std::ostringstream os;
    render_to(ast, os);
    return os.str();
}

bool ast_equal(const AstPtr& a, const AstPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case Ast::Kind::number:
            if (a->number != b->number) return false;
            break;
        case Ast::Kind::zeta:
            if (a->zeta_n != b->zeta_n) return false;
            break;
        case Ast::Kind::var:
            if (a->var_index != b->var_index) return false;
            break;
        case Ast::Kind::call:
            if (a->call_name != b->call_name) return false;
            break;
        case Ast::Kind::binary:
            if (a->op != b->op) return false;
            break;
        case Ast::Kind::power:
            if (a->exponent != b->exponent) return false;
            break;
        case Ast::Kind::negate: break;
    }
    if (a->args.size() != b->args.size()) return false;
    for (size_t i = 0; i < a->args.size(); ++i)
        if (!ast_equal(a->args[i], b->args[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Lowering

namespace {

// Every arithmetic subtree is carried as an exact rational function num/den;
// series combinators leave the arithmetic world for good.
struct Value {
    std::optional<std::pair<MultiPoly, MultiPoly>> ratfun;
    std::optional<SeriesExpr> series;
};

void strip_monomial_gcd(MultiPoly& num, MultiPoly& den) {
    if (num.is_zero() || den.is_zero()) return;
    MultiIndex g(num.m, 0);
    bool first = true;
    for (const MultiPoly* p : {&num, &den}) {
        for (const auto& [n, v] : p->terms) {
            if (first) {
                g = n;
                first = false;
            } else {
                for (size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], n[i]);
            }
        }
    }
    if (total_degree(g) == 0) return;
    auto strip = [&](MultiPoly& p) {
        MultiPoly out(p.m);
        for (const auto& [n, v] : p.terms) {
            MultiIndex k(n.size());
            for (size_t i = 0; i < k.size(); ++i) k[i] = n[i] - g[i];
            out.terms.emplace(std::move(k), v);
        }
        p = std::move(out);
    };
    strip(num);
    strip(den);
}

class Lowerer {
   public:
    explicit Lowerer(int m) : m_(m) {}

    Value eval(const AstPtr& a) {
        switch (a->kind) {
            case Ast::Kind::number:
                return constant(CycloElement(a->number));
            case Ast::Kind::zeta:
                return constant(CycloElement::zeta(a->zeta_n));
            case Ast::Kind::var: {
                MultiIndex n(m_, 0);
                n[a->var_index == 0 ? 0 : a->var_index - 1] = 1;
                Value v;
                v.ratfun = {MultiPoly::monomial(m_, n, CycloElement(1L)),
                            MultiPoly::constant(m_, CycloElement(1L))};
                return v;
            }
            case Ast::Kind::negate: {
                Value v = eval(a->args[0]);
                if (v.ratfun) {
                    v.ratfun->first = -v.ratfun->first;
                    return v;
                }
                throw SemanticError("series combinators cannot be negated; wrap the result instead");
            }
            case Ast::Kind::power: {
                Value v = eval(a->args[0]);
                if (!v.ratfun)
                    throw SemanticError("series combinators cannot be raised to powers");
                Value out;
                out.ratfun = {poly_pow(v.ratfun->first, a->exponent),
                              poly_pow(v.ratfun->second, a->exponent)};
                return out;
            }
            case Ast::Kind::binary: {
                Value l = eval(a->args[0]);
                Value r = eval(a->args[1]);
                if (!l.ratfun || !r.ratfun)
                    throw SemanticError(
                        "series combinators cannot enter +, -, *, / arithmetic");
                const auto& [an, ad] = *l.ratfun;
                const auto& [bn, bd] = *r.ratfun;
                Value out;
                switch (a->op) {
                    case '+': out.ratfun = {an * bd + bn * ad, ad * bd}; break;
                    case '-': out.ratfun = {an * bd - bn * ad, ad * bd}; break;
                    case '*': out.ratfun = {an * bn, ad * bd}; break;
                    case '/':
                        if (bn.is_zero()) throw SemanticError("division by zero");
                        out.ratfun = {an * bd, ad * bn};
                        break;
                }
                strip_monomial_gcd(out.ratfun->first, out.ratfun->second);
                return out;
            }
            case Ast::Kind::call: return call(a);
        }
        throw Error("internal", "unknown AST node");
    }

    SeriesExpr to_series(Value v, const char* what) {
        if (v.series) return *v.series;
        auto& [num, den] = *v.ratfun;
        strip_monomial_gcd(num, den);
        if (den.at_origin().is_zero())
            throw SemanticError(std::string(what) +
                                ": denominator vanishes at origin (not a power series at 0)");
        return SeriesExpr::rational(num, den);
    }

    CycloElement to_constant(Value v, const char* what) {
        if (!v.ratfun || !v.ratfun->first.is_constant() || !v.ratfun->second.is_constant())
            throw SemanticError(std::string(what) + ": a constant expression is required");
        if (v.ratfun->second.is_zero()) throw SemanticError("division by zero");
        return v.ratfun->first.at_origin() / v.ratfun->second.at_origin();
    }

   private:
    Value constant(CycloElement c) {
        Value v;
        v.ratfun = {MultiPoly::constant(m_, std::move(c)),
                    MultiPoly::constant(m_, CycloElement(1L))};
        return v;
    }

    Value call(const AstPtr& a) {
        const std::string& name = a->call_name;
        Value out;
        if (name == "log1p") {
            if (a->args.size() != 1) throw ArityError("log1p takes one integer argument");
            CycloElement k = to_constant(eval(a->args[0]), "log1p");
            if (!k.is_rational() || k.rational_value().get_den() != 1 || k.rational_value() < 1)
                throw SemanticError("log1p needs a positive integer step");
            out.series = SeriesExpr::log1p(k.rational_value().get_num().get_ui());
            return out;
        }
        if (name == "expseries") {
            if (!a->args.empty()) throw ArityError("expseries takes no arguments");
            out.series = SeriesExpr::expseries();
            return out;
        }
        if (name == "gapfact") {
            if (!a->args.empty()) throw ArityError("gapfact takes no arguments");
            out.series = SeriesExpr::gapfact();
            return out;
        }
        if (name == "hadamard") {
            if (a->args.size() != 2) throw ArityError("hadamard takes two series arguments");
            SeriesExpr l = to_series(eval(a->args[0]), "hadamard");
            SeriesExpr r = to_series(eval(a->args[1]), "hadamard");
            out.series = hadamard(l, r);
            return out;
        }
        if (name == "conj" || name == "abs2") {
            if (a->args.size() != 1) throw ArityError(name + " takes one argument");
            Value v = eval(a->args[0]);
            if (v.ratfun && v.ratfun->first.is_constant() && v.ratfun->second.is_constant()) {
                CycloElement c = to_constant(std::move(v), name.c_str());
                Value res;
                if (name == "conj")
                    res.ratfun = {MultiPoly::constant(m_, conjugate(c)),
                                  MultiPoly::constant(m_, CycloElement(1L))};
                else
                    res.ratfun = {MultiPoly::constant(m_, c * conjugate(c)),
                                  MultiPoly::constant(m_, CycloElement(1L))};
                return res;
            }
            SeriesExpr inner = to_series(std::move(v), name.c_str());
            out.series = name == "conj" ? conjugate_series(inner) : abs_square(inner);
            return out;
        }
        if (name == "line" || name == "affine") {
            if (a->args.empty()) throw ArityError(name + " needs a series argument");
            SeriesExpr inner = to_series(eval(a->args[0]), name.c_str());
            std::vector<CycloElement> ws;
            for (size_t i = 1; i < a->args.size(); ++i)
                ws.push_back(to_constant(eval(a->args[i]), name.c_str()));
            out.series = name == "line" ? line_specialize(inner, std::move(ws))
                                        : affine_substitute(inner, std::move(ws));
            return out;
        }
        throw Error("internal", "unhandled builtin " + name);
    }

    int m_;
};

}  // namespace

Lowered lower(const AstPtr& ast, int m) {
    Lowerer lw(m);
    Value v = lw.eval(ast);
    Lowered out;
    if (v.series) {
        out.series = std::move(v.series);
        return out;
    }
    auto& [num, den] = *v.ratfun;
    if (num.is_constant() && den.is_constant()) {
        if (den.is_zero()) throw SemanticError("division by zero");
        out.constant = num.at_origin() / den.at_origin();
        return out;
    }
    out.series = lw.to_series(std::move(v), "expression");
    return out;
}

SeriesExpr lower_to_series(const std::string& expr, int m) {
    Lowered l = lower(parse(expr, m), m);
    if (l.series) return *l.series;
    return SeriesExpr::rational(MultiPoly::constant(m, *l.constant),
                                MultiPoly::constant(m, CycloElement(1L)));
}

CycloElement parse_element(const std::string& expr) {
    Lowered l = lower(parse(expr, 1), 1);
    if (!l.constant) throw SemanticError("expected a constant expression: " + expr);
    return *l.constant;
}

MultiPoly parse_polynomial(const std::string& expr, int m) {
    Lowered l = lower(parse(expr, m), m);
    if (l.constant) return MultiPoly::constant(m, *l.constant);
    if (!l.series || l.series->kind() != SeriesExpr::Kind::rational ||
        !l.series->den().is_constant())
        throw SemanticError("expected a polynomial expression: " + expr);
    const CycloElement scale = l.series->den().at_origin().inverse();
    return l.series->num().scaled(scale);
}

}  // namespace pclab::dsl
