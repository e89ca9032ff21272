#include "fdt/term.hpp"

#include <cctype>
#include <sstream>

namespace fdt {

std::optional<CtrId> CtrId::parse(std::string_view text) {
    if (text.rfind("ctr_", 0) != 0) return std::nullopt;
    std::string_view rest = text.substr(4);
    std::size_t us = rest.rfind('_');
    if (us == std::string_view::npos || us == 0 || us + 1 >= rest.size())
        return std::nullopt;
    std::string_view digits = rest.substr(us + 1);
    int n = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
        n = n * 10 + (c - '0');
    }
    return CtrId{std::string(rest.substr(0, us)), n};
}

Term Term::integer(std::int64_t v) {
    Term t;
    t.kind_ = Kind::Int;
    t.a_ = v;
    return t;
}

Term Term::atom(std::string name) {
    Term t;
    t.kind_ = Kind::Atom;
    t.text_ = std::move(name);
    return t;
}

Term Term::variable(VarId v) {
    Term t;
    t.kind_ = Kind::Var;
    t.a_ = v.n;
    return t;
}

Term Term::compound(std::string functor, std::vector<Term> args) {
    Term t;
    t.kind_ = Kind::Compound;
    t.text_ = std::move(functor);
    t.kids_ = std::move(args);
    return t;
}

Term Term::list(std::vector<Term> elems) {
    Term t;
    t.kind_ = Kind::List;
    t.kids_ = std::move(elems);
    return t;
}

Term Term::interval(std::int64_t lo, std::int64_t hi) {
    Term t;
    t.kind_ = Kind::Interval;
    t.a_ = lo;
    t.b_ = hi;
    return t;
}

Term Term::hash(Term inner) {
    Term t;
    t.kind_ = Kind::Hash;
    t.kids_.push_back(std::move(inner));
    return t;
}

Term Term::wildcard(std::string name) {
    Term t;
    t.kind_ = Kind::Wildcard;
    t.text_ = std::move(name);
    return t;
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

enum class Assoc { XFX, YFX, XFY };

struct OpInfo {
    int prec;
    Assoc assoc;
    bool spaced; // `in` renders with spaces, the rest tight
};

const OpInfo* infix_op(const std::string& functor) {
    static const std::map<std::string, OpInfo> ops = {
        {"in", {10, Assoc::XFX, true}}, {"-", {20, Assoc::YFX, false}},
        {"..", {30, Assoc::XFX, false}}, {"/", {40, Assoc::YFX, false}},
        {"\\", {50, Assoc::XFY, false}},
    };
    auto it = ops.find(functor);
    return it == ops.end() ? nullptr : &it->second;
}

void render(const Term& t, std::ostream& os, int min_prec) {
    switch (t.kind()) {
    case Term::Kind::Int:
        os << t.as_int();
        return;
    case Term::Kind::Atom:
        os << t.name();
        return;
    case Term::Kind::Var:
        os << t.var().str();
        return;
    case Term::Kind::Wildcard:
        os << t.name();
        return;
    case Term::Kind::Interval:
        os << '[' << t.interval_lo() << '|' << t.interval_hi() << ']';
        return;
    case Term::Kind::List: {
        os << '[';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) os << ',';
            render(t.args()[i], os, 0);
        }
        os << ']';
        return;
    }
    case Term::Kind::Hash:
        os << '#';
        render(t.args()[0], os, 100);
        return;
    case Term::Kind::Compound: {
        const OpInfo* op = t.args().size() == 2 ? infix_op(t.name()) : nullptr;
        if (op) {
            bool parens = op->prec < min_prec;
            if (parens) os << '(';
            int lmin = op->assoc == Assoc::YFX ? op->prec : op->prec + 1;
            int rmin = op->assoc == Assoc::XFY ? op->prec : op->prec + 1;
            render(t.args()[0], os, lmin);
            os << (op->spaced ? " " : "") << t.name() << (op->spaced ? " " : "");
            render(t.args()[1], os, rmin);
            if (parens) os << ')';
            return;
        }
        os << t.name() << '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) os << ',';
            render(t.args()[i], os, 0);
        }
        os << ')';
        return;
    }
    }
}

} // namespace

std::string Term::str() const {
    std::ostringstream os;
    render(*this, os, 0);
    return os.str();
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

enum class Tok {
    Int, Ident, UIdent, LParen, RParen, LBrack, RBrack,
    Comma, Pipe, HashSign, Backslash, Slash, Minus, DotDot, Star, End
};

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;
    std::int64_t value = 0;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        while (pos_ < src_.size() &&
               std::isspace(static_cast<unsigned char>(src_[pos_])))
            ++pos_;
        tok_.pos = pos_;
        tok_.text.clear();
        tok_.value = 0;
        if (pos_ >= src_.size()) {
            tok_.kind = Tok::End;
            return;
        }
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   std::isdigit(static_cast<unsigned char>(src_[pos_])))
                ++pos_;
            tok_.kind = Tok::Int;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            try {
                tok_.value = std::stoll(tok_.text);
            } catch (const std::out_of_range&) {
                throw ParseError("integer literal out of range", start);
            }
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                    src_[pos_] == '_'))
                ++pos_;
            tok_.text = std::string(src_.substr(start, pos_ - start));
            tok_.kind = (std::islower(static_cast<unsigned char>(c)))
                            ? Tok::Ident
                            : Tok::UIdent;
            return;
        }
        ++pos_;
        switch (c) {
        case '(': tok_.kind = Tok::LParen; return;
        case ')': tok_.kind = Tok::RParen; return;
        case '[': tok_.kind = Tok::LBrack; return;
        case ']': tok_.kind = Tok::RBrack; return;
        case ',': tok_.kind = Tok::Comma; return;
        case '|': tok_.kind = Tok::Pipe; return;
        case '#': tok_.kind = Tok::HashSign; return;
        case '\\': tok_.kind = Tok::Backslash; return;
        case '/': tok_.kind = Tok::Slash; return;
        case '-': tok_.kind = Tok::Minus; return;
        case '*': tok_.kind = Tok::Star; return;
        case '.':
            if (pos_ < src_.size() && src_[pos_] == '.') {
                ++pos_;
                tok_.kind = Tok::DotDot;
                return;
            }
            throw ParseError("unexpected '.'", pos_ - 1);
        default:
            throw ParseError(std::string("unexpected character '") + c + "'",
                             pos_ - 1);
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    Token tok_;
};

class Parser {
public:
    explicit Parser(std::string_view src) : lex_(src) {}

    Term parse_full() {
        Term t = parse_expr(0);
        if (lex_.peek().kind != Tok::End)
            throw ParseError("trailing input after term", lex_.peek().pos);
        return t;
    }

private:
    struct Infix {
        const char* functor;
        int prec;
        Assoc assoc;
    };

    std::optional<Infix> peek_infix() {
        switch (lex_.peek().kind) {
        case Tok::Minus: return Infix{"-", 20, Assoc::YFX};
        case Tok::DotDot: return Infix{"..", 30, Assoc::XFX};
        case Tok::Slash: return Infix{"/", 40, Assoc::YFX};
        case Tok::Backslash: return Infix{"\\", 50, Assoc::XFY};
        case Tok::Ident:
            if (lex_.peek().text == "in") return Infix{"in", 10, Assoc::XFX};
            return std::nullopt;
        default: return std::nullopt;
        }
    }

    Term parse_expr(int min_prec) {
        Term lhs = parse_prefix();
        while (auto op = peek_infix()) {
            if (op->prec < min_prec) break;
            lex_.take();
            int rmin = op->assoc == Assoc::XFY ? op->prec : op->prec + 1;
            Term rhs = parse_expr(rmin);
            lhs = Term::compound(op->functor, {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Term parse_prefix() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::HashSign) {
            lex_.take();
            return Term::hash(parse_prefix());
        }
        if (t.kind == Tok::Minus) {
            Token minus = lex_.take();
            if (lex_.peek().kind != Tok::Int)
                throw ParseError("expected integer after '-'", minus.pos);
            Token num = lex_.take();
            return Term::integer(-num.value);
        }
        return parse_primary();
    }

    Term parse_primary() {
        Token t = lex_.take();
        switch (t.kind) {
        case Tok::Int:
            return Term::integer(t.value);
        case Tok::Star:
            return Term::atom("*");
        case Tok::UIdent:
            return Term::wildcard(t.text);
        case Tok::Ident: {
            if (auto var = parse_varid(t.text)) return Term::variable(*var);
            if (lex_.peek().kind == Tok::LParen) {
                lex_.take();
                std::vector<Term> args;
                args.push_back(parse_expr(0));
                while (lex_.peek().kind == Tok::Comma) {
                    lex_.take();
                    args.push_back(parse_expr(0));
                }
                expect(Tok::RParen, "')'");
                return Term::compound(t.text, std::move(args));
            }
            return Term::atom(t.text);
        }
        case Tok::LParen: {
            Term inner = parse_expr(0);
            expect(Tok::RParen, "')'");
            return inner;
        }
        case Tok::LBrack:
            return parse_bracketed(t.pos);
        default:
            throw ParseError("expected a term", t.pos);
        }
    }

    // Lists, [lo|hi] interval cells, and [*].
    Term parse_bracketed(std::size_t open_pos) {
        if (lex_.peek().kind == Tok::RBrack) {
            lex_.take();
            return Term::list({});
        }
        Term first = parse_expr(0);
        if (lex_.peek().kind == Tok::Pipe) {
            lex_.take();
            Term hi = parse_expr(0);
            expect(Tok::RBrack, "']'");
            if (!first.is(Term::Kind::Int) || !hi.is(Term::Kind::Int))
                throw ParseError("interval cell bounds must be integers", open_pos);
            return Term::interval(first.as_int(), hi.as_int());
        }
        std::vector<Term> elems;
        elems.push_back(std::move(first));
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            elems.push_back(parse_expr(0));
        }
        expect(Tok::RBrack, "']'");
        return Term::list(std::move(elems));
    }

    static std::optional<VarId> parse_varid(const std::string& name) {
        constexpr std::string_view prefix = "fdvar_";
        if (name.rfind(prefix, 0) != 0 || name.size() == prefix.size())
            return std::nullopt;
        int n = 0;
        for (std::size_t i = prefix.size(); i < name.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(name[i])))
                return std::nullopt;
            n = n * 10 + (name[i] - '0');
        }
        return VarId{n};
    }

    void expect(Tok kind, const char* what) {
        if (lex_.peek().kind != kind)
            throw ParseError(std::string("expected ") + what, lex_.peek().pos);
        lex_.take();
    }

    Lexer lex_;
};

} // namespace

Term parse_term(std::string_view text) { return Parser(text).parse_full(); }

// ---------------------------------------------------------------------------

namespace {
void collect_vars_into(const Term& t, std::vector<VarId>& out) {
    switch (t.kind()) {
    case Term::Kind::Var: {
        VarId v = t.var();
        for (VarId seen : out)
            if (seen == v) return;
        out.push_back(v);
        return;
    }
    case Term::Kind::Compound:
    case Term::Kind::List:
    case Term::Kind::Hash:
        for (const Term& k : t.args()) collect_vars_into(k, out);
        return;
    default:
        return;
    }
}
} // namespace

std::vector<VarId> collect_vars(const Term& t) {
    std::vector<VarId> out;
    collect_vars_into(t, out);
    return out;
}

VarId IdRegistry::fresh_var() { return VarId{next_var_++}; }

VarId IdRegistry::var_for_name(const std::string& name) {
    auto it = by_name_.find(name);
    if (it != by_name_.end()) return it->second;
    VarId v = fresh_var();
    by_name_.emplace(name, v);
    named_order_.emplace_back(name, v);
    return v;
}

CtrId IdRegistry::next_ctr(const std::string& functor) {
    int& n = ctr_counters_[functor];
    return CtrId{functor, ++n};
}

namespace {
Term bind_placeholders(const Term& t, IdRegistry& reg) {
    switch (t.kind()) {
    case Term::Kind::Wildcard:
        return Term::variable(reg.var_for_name(t.name()));
    case Term::Kind::Compound: {
        std::vector<Term> args;
        args.reserve(t.args().size());
        for (const Term& k : t.args()) args.push_back(bind_placeholders(k, reg));
        return Term::compound(t.name(), std::move(args));
    }
    case Term::Kind::List: {
        std::vector<Term> elems;
        elems.reserve(t.args().size());
        for (const Term& k : t.args()) elems.push_back(bind_placeholders(k, reg));
        return Term::list(std::move(elems));
    }
    case Term::Kind::Hash:
        return Term::hash(bind_placeholders(t.args()[0], reg));
    default:
        return t;
    }
}
} // namespace

std::pair<CtrId, Term> intern_constraint(const Term& source, IdRegistry& reg) {
    if (!source.is(Term::Kind::Compound))
        throw ProgramError("constraint must be a compound term: " + source.str());
    Term rep = bind_placeholders(source, reg);
    CtrId id = reg.next_ctr(source.name());
    return {std::move(id), std::move(rep)};
}

} // namespace fdt
