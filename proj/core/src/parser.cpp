#include "pctlab/parser.hpp"

#include "pctlab/errors.hpp"

#include <cctype>
#include <string>
#include <vector>

namespace pctlab {

namespace {

enum class Tok {
    End,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Bang,
    Amp,
    Pipe,
    Arrow,
    CmpGe,
    CmpGt,
    CmpLe,
    CmpLt,
    CmpEq,
    Number,
    Ident,
    KwTrue,
    KwFalse,
    KwExmatch,
    KwP,
    KwX,
    KwU,
    KwF,
    KwG,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    int line = 1;
    int col = 1;
};

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
    throw InputError("line " + std::to_string(line) + ", col " + std::to_string(col) +
                     ": " + msg);
}

[[noreturn]] void fail_at(const Token& t, const std::string& msg) {
    fail_at(t.line, t.col, msg);
}

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i + k] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += n;
    };
    while (i < text.size()) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance(1);
            continue;
        }
        Token t;
        t.line = line;
        t.col = col;
        if (c == '=' && i + 1 < text.size() && text[i + 1] == '>') {
            t.kind = Tok::Arrow;
            advance(2);
        } else if (c == '>' && i + 1 < text.size() && text[i + 1] == '=') {
            t.kind = Tok::CmpGe;
            advance(2);
        } else if (c == '<' && i + 1 < text.size() && text[i + 1] == '=') {
            t.kind = Tok::CmpLe;
            advance(2);
        } else if (c == '>') {
            t.kind = Tok::CmpGt;
            advance(1);
        } else if (c == '<') {
            t.kind = Tok::CmpLt;
            advance(1);
        } else if (c == '=') {
            t.kind = Tok::CmpEq;
            advance(1);
        } else if (c == '(') {
            t.kind = Tok::LParen;
            advance(1);
        } else if (c == ')') {
            t.kind = Tok::RParen;
            advance(1);
        } else if (c == '[') {
            t.kind = Tok::LBrack;
            advance(1);
        } else if (c == ']') {
            t.kind = Tok::RBrack;
            advance(1);
        } else if (c == '{') {
            t.kind = Tok::LBrace;
            advance(1);
        } else if (c == '}') {
            t.kind = Tok::RBrace;
            advance(1);
        } else if (c == ',') {
            t.kind = Tok::Comma;
            advance(1);
        } else if (c == '!') {
            t.kind = Tok::Bang;
            advance(1);
        } else if (c == '&') {
            t.kind = Tok::Amp;
            advance(1);
        } else if (c == '|') {
            t.kind = Tok::Pipe;
            advance(1);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) {
                ++j;
            }
            if (j < text.size() && (text[j] == '/' || text[j] == '.')) {
                std::size_t k = j + 1;
                if (k >= text.size() || !std::isdigit(static_cast<unsigned char>(text[k]))) {
                    fail_at(line, col, "malformed number");
                }
                while (k < text.size() &&
                       std::isdigit(static_cast<unsigned char>(text[k]))) {
                    ++k;
                }
                j = k;
            }
            t.kind = Tok::Number;
            t.text = std::string(text.substr(i, j - i));
            advance(j - i);
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) ||
                                       text[j] == '_')) {
                ++j;
            }
            t.text = std::string(text.substr(i, j - i));
            if (t.text == "true") {
                t.kind = Tok::KwTrue;
            } else if (t.text == "false") {
                t.kind = Tok::KwFalse;
            } else if (t.text == "exmatch") {
                t.kind = Tok::KwExmatch;
            } else if (t.text == "P") {
                t.kind = Tok::KwP;
            } else if (t.text == "X") {
                t.kind = Tok::KwX;
            } else if (t.text == "U") {
                t.kind = Tok::KwU;
            } else if (t.text == "F") {
                t.kind = Tok::KwF;
            } else if (t.text == "G") {
                t.kind = Tok::KwG;
            } else {
                t.kind = Tok::Ident;
            }
            advance(j - i);
        } else {
            fail_at(line, col, std::string("unexpected character '") + c + "'");
        }
        out.push_back(std::move(t));
    }
    Token end;
    end.kind = Tok::End;
    end.line = line;
    end.col = col;
    out.push_back(end);
    return out;
}

class Parser {
public:
    Parser(FormulaFactory& ff, std::vector<Token> tokens)
        : ff_(ff), tokens_(std::move(tokens)) {}

    FormulaPtr run() {
        FormulaPtr f = parse_state();
        if (peek().kind != Tok::End) {
            fail_at(peek(), "trailing input after formula");
        }
        return f;
    }

private:
    const Token& peek() const { return tokens_[pos_]; }

    Token take() { return tokens_[pos_++]; }

    Token expect(Tok kind, const char* what) {
        if (peek().kind != kind) {
            fail_at(peek(), std::string("expected ") + what);
        }
        return take();
    }

    FormulaPtr parse_state() { return parse_implies(); }

    FormulaPtr parse_implies() {
        FormulaPtr l = parse_or();
        if (peek().kind == Tok::Arrow) {
            take();
            return ff_.implies(l, parse_implies());
        }
        return l;
    }

    FormulaPtr parse_or() {
        FormulaPtr l = parse_and();
        while (peek().kind == Tok::Pipe) {
            take();
            l = ff_.disj(l, parse_and());
        }
        return l;
    }

    FormulaPtr parse_and() {
        FormulaPtr l = parse_unary();
        while (peek().kind == Tok::Amp) {
            take();
            l = ff_.conj(l, parse_unary());
        }
        return l;
    }

    FormulaPtr parse_unary() {
        if (peek().kind == Tok::Bang) {
            take();
            return ff_.negation(parse_unary());
        }
        return parse_primary();
    }

    FormulaPtr parse_primary() {
        switch (peek().kind) {
        case Tok::KwTrue:
            take();
            return ff_.truth();
        case Tok::KwFalse:
            take();
            return ff_.falsehood();
        case Tok::Ident:
            return ff_.atom(take().text);
        case Tok::LParen: {
            take();
            FormulaPtr f = parse_state();
            expect(Tok::RParen, "')'");
            return f;
        }
        case Tok::KwExmatch:
            return parse_exmatch();
        case Tok::KwP:
            return parse_prob();
        default:
            fail_at(peek(), "expected a state formula");
        }
    }

    FormulaPtr parse_exmatch() {
        take();
        expect(Tok::LBrace, "'{'");
        std::vector<std::string> props;
        if (peek().kind != Tok::RBrace) {
            props.push_back(expect(Tok::Ident, "proposition name").text);
            while (peek().kind == Tok::Comma) {
                take();
                props.push_back(expect(Tok::Ident, "proposition name").text);
            }
        }
        expect(Tok::RBrace, "'}'");
        return ff_.exact_match(std::move(props));
    }

    Cmp parse_cmp() {
        switch (peek().kind) {
        case Tok::CmpGe:
            take();
            return Cmp::Ge;
        case Tok::CmpGt:
            take();
            return Cmp::Gt;
        case Tok::CmpLe:
            take();
            return Cmp::Le;
        case Tok::CmpLt:
            take();
            return Cmp::Lt;
        case Tok::CmpEq:
            take();
            return Cmp::Eq;
        default:
            fail_at(peek(), "expected a comparison operator");
        }
    }

    long parse_step_bound() {
        const Token t = expect(Tok::Number, "step bound");
        for (char c : t.text) {
            if (!std::isdigit(static_cast<unsigned char>(c))) {
                fail_at(t, "step bound must be a nonnegative integer");
            }
        }
        return std::stol(t.text);
    }

    FormulaPtr parse_prob() {
        const Token p = take();
        const Cmp cmp = parse_cmp();
        const Token num = expect(Tok::Number, "probability bound");
        Rat bound;
        try {
            bound = parse_rational(num.text);
        } catch (const InputError&) {
            fail_at(num, "malformed probability bound");
        }
        if (bound < 0 || bound > 1) {
            fail_at(num, "probability bound outside [0,1]");
        }
        expect(Tok::LBrack, "'['");
        FormulaPtr result;
        if (peek().kind == Tok::KwG) {
            take();
            FormulaPtr f = parse_state();
            if (!(cmp == Cmp::Eq && bound == 1)) {
                fail_at(p, "G is only available as P=1 [ G f ]");
            }
            result = ff_.globally_one(f);
        } else if (peek().kind == Tok::KwX) {
            take();
            result = ff_.prob(cmp, bound, FormulaFactory::next(parse_state()));
        } else if (peek().kind == Tok::KwF) {
            take();
            long k = -1;
            if (peek().kind == Tok::CmpLe) {
                take();
                k = parse_step_bound();
            }
            FormulaPtr f = parse_state();
            result = k < 0 ? ff_.prob_finally(cmp, bound, f)
                           : ff_.prob_finally_bounded(cmp, bound, f, k);
        } else {
            FormulaPtr l = parse_state();
            expect(Tok::KwU, "'U'");
            long k = -1;
            if (peek().kind == Tok::CmpLe) {
                take();
                k = parse_step_bound();
            }
            FormulaPtr r = parse_state();
            result = ff_.prob(cmp, bound,
                              k < 0 ? FormulaFactory::until(l, r)
                                    : FormulaFactory::bounded_until(l, r, k));
        }
        expect(Tok::RBrack, "']'");
        return result;
    }

    FormulaFactory& ff_;
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

int precedence(const StateFormula& f) {
    switch (f.kind) {
    case StateKind::Implies:
        return 1;
    case StateKind::Or:
        return 2;
    case StateKind::And:
        return 3;
    case StateKind::Not:
        return 4;
    default:
        return 5;
    }
}

const char* cmp_text(Cmp c) {
    switch (c) {
    case Cmp::Ge:
        return ">=";
    case Cmp::Gt:
        return ">";
    case Cmp::Le:
        return "<=";
    case Cmp::Lt:
        return "<";
    case Cmp::Eq:
        return "=";
    }
    return "?";
}

void print_state(std::string& out, const FormulaPtr& f, int min_prec);

void print_prob(std::string& out, const StateFormula& f) {
    const PathFormula& p = *f.path;
    if (f.cmp == Cmp::Eq && f.bound == 0 && p.kind == PathKind::Until &&
        p.left->kind == StateKind::True && p.right->kind == StateKind::Not) {
        out += "P=1 [ G ";
        print_state(out, p.right->a, 0);
        out += " ]";
        return;
    }
    out += 'P';
    out += cmp_text(f.cmp);
    out += format_rational(f.bound);
    out += " [ ";
    switch (p.kind) {
    case PathKind::Next:
        out += "X ";
        print_state(out, p.right, 0);
        break;
    case PathKind::Until:
        if (p.left->kind == StateKind::True) {
            out += "F ";
            print_state(out, p.right, 0);
        } else {
            print_state(out, p.left, 0);
            out += " U ";
            print_state(out, p.right, 0);
        }
        break;
    case PathKind::BoundedUntil:
        if (p.left->kind == StateKind::True) {
            out += "F<=";
            out += std::to_string(p.step_bound);
            out += ' ';
            print_state(out, p.right, 0);
        } else {
            print_state(out, p.left, 0);
            out += " U<=";
            out += std::to_string(p.step_bound);
            out += ' ';
            print_state(out, p.right, 0);
        }
        break;
    }
    out += " ]";
}

void print_state(std::string& out, const FormulaPtr& f, int min_prec) {
    const int prec = precedence(*f);
    const bool parens = prec < min_prec;
    if (parens) {
        out += '(';
    }
    switch (f->kind) {
    case StateKind::True:
        out += "true";
        break;
    case StateKind::False:
        out += "false";
        break;
    case StateKind::Atom:
        out += f->name;
        break;
    case StateKind::Not:
        out += '!';
        print_state(out, f->a, 4);
        break;
    case StateKind::And:
        print_state(out, f->a, 3);
        out += " & ";
        print_state(out, f->b, 4);
        break;
    case StateKind::Or:
        print_state(out, f->a, 2);
        out += " | ";
        print_state(out, f->b, 3);
        break;
    case StateKind::Implies:
        print_state(out, f->a, 2);
        out += " => ";
        print_state(out, f->b, 1);
        break;
    case StateKind::Prob:
        print_prob(out, *f);
        break;
    case StateKind::ExactMatch: {
        out += "exmatch{";
        for (std::size_t i = 0; i < f->props.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += f->props[i];
        }
        out += '}';
        break;
    }
    }
    if (parens) {
        out += ')';
    }
}

} // namespace

FormulaPtr parse_formula(FormulaFactory& factory, std::string_view text) {
    Parser parser(factory, lex(text));
    return parser.run();
}

std::string print_formula(const FormulaPtr& f) {
    std::string out;
    print_state(out, f, 0);
    return out;
}

} // namespace pctlab
