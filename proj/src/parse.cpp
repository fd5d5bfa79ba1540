#include "rankp/parse.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace rankp::cli {
namespace {

struct Token {
    enum class Kind { integer, name, punct, newline, eof };
    Kind kind;
    std::string text; // name or punct spelling
    long value = 0;   // integer
    SourcePos pos;
};

[[noreturn]] void bail(const SourcePos& pos, const std::string& msg) {
    std::ostringstream out;
    out << "line " << pos.line << " col " << pos.col << ": " << msg;
    fail(err::parse_error, out.str());
}

class Lexer {
  public:
    explicit Lexer(const std::string& text) : s_(text) { advance(); }

    const Token& peek() const { return tok_; }
    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (i_ < s_.size()) {
            char ch = s_[i_];
            if (ch == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') step();
                continue;
            }
            if (ch == ' ' || ch == '\t' || ch == '\r') {
                step();
                continue;
            }
            break;
        }
        tok_.pos = {line_, col_};
        if (i_ >= s_.size()) {
            tok_.kind = Token::Kind::eof;
            tok_.text = "<eof>";
            return;
        }
        char ch = s_[i_];
        if (ch == '\n') {
            tok_.kind = Token::Kind::newline;
            tok_.text = "<newline>";
            step();
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            long v = 0;
            bool over = false;
            while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
                long d = s_[i_] - '0';
                if (v > (std::numeric_limits<long>::max() - d) / 10) over = true;
                if (!over) v = v * 10 + d;
                step();
            }
            if (over) bail(tok_.pos, "integer literal out of range");
            tok_.kind = Token::Kind::integer;
            tok_.value = v;
            tok_.text = std::to_string(v);
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
            std::string w;
            while (i_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
                w += s_[i_];
                step();
            }
            tok_.kind = Token::Kind::name;
            tok_.text = std::move(w);
            return;
        }
        static const std::string puncts = "+-*/^()=:~,";
        if (puncts.find(ch) != std::string::npos) {
            tok_.kind = Token::Kind::punct;
            tok_.text = std::string(1, ch);
            step();
            return;
        }
        bail({line_, col_}, std::string("stray character '") + ch + "'");
    }

    void step() {
        if (s_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    const std::string& s_;
    size_t i_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

bool is_gen_token(const std::string& w, long* index) {
    if (w.size() < 2 || w[0] != 'a') return false;
    for (size_t i = 1; i < w.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(w[i]))) return false;
    *index = std::stol(w.substr(1));
    return true;
}

const std::set<std::string>& reserved_words() {
    static const std::set<std::string> r = {
        "mode",     "charp",     "mixed",  "at",        "inf",   "classify",
        "conductor", "residue",  "cartier", "check",    "as",    "reduce",
        "kummerian", "lift",     "filtration", "galois", "etale", "mu",
        "alpha",    "random",    "t",      "T",         "l",     "pi",
    };
    return r;
}

bool is_reserved(const std::string& w) {
    long idx;
    return reserved_words().count(w) > 0 || is_gen_token(w, &idx);
}

class Parser {
  public:
    explicit Parser(const std::string& text) : lx_(text) {}

    Document parse() {
        parse_header();
        while (true) {
            if (pending_binding_) {
                doc_.bindings.push_back(parse_binding());
                continue;
            }
            if (lx_.peek().kind == Token::Kind::eof) break;
            if (skip_newline()) continue;
            Token head = lx_.peek();
            if (head.kind != Token::Kind::name)
                bail(head.pos, "expected a binding or a directive");
            if (is_directive_head(head.text)) {
                doc_.directives.push_back(parse_directive());
            } else {
                doc_.bindings.push_back(parse_binding());
            }
        }
        check_types();
        return std::move(doc_);
    }

  private:
    bool skip_newline() {
        if (lx_.peek().kind == Token::Kind::newline) {
            lx_.take();
            return true;
        }
        return false;
    }

    void expect_line_end(const char* what) {
        const Token& t = lx_.peek();
        if (t.kind == Token::Kind::newline || t.kind == Token::Kind::eof) {
            if (t.kind == Token::Kind::newline) lx_.take();
            return;
        }
        if (t.kind == Token::Kind::name || t.kind == Token::Kind::integer)
            bail(t.pos, "unexpected '" + t.text + "' after " + what +
                            " (there is no implicit product; write '*')");
        bail(t.pos, "unexpected '" + t.text + "' after " + what);
    }

    Token expect_name(const char* what) {
        Token t = lx_.take();
        if (t.kind != Token::Kind::name) bail(t.pos, std::string("expected ") + what);
        return t;
    }

    long expect_integer(const char* what) {
        Token t = lx_.take();
        if (t.kind != Token::Kind::integer) bail(t.pos, std::string("expected ") + what);
        return t.value;
    }

    void expect_punct(const char* p) {
        Token t = lx_.take();
        if (t.kind != Token::Kind::punct || t.text != p)
            bail(t.pos, std::string("expected '") + p + "'");
    }

    long signed_integer(const char* what) {
        bool neg = false;
        if (lx_.peek().kind == Token::Kind::punct && lx_.peek().text == "-") {
            lx_.take();
            neg = true;
        }
        long v = expect_integer(what);
        return neg ? -v : v;
    }

    // ---- header ----

    void parse_header() {
        bool saw_mode = false, saw_p = false;
        std::set<std::string> seen;
        while (true) {
            if (skip_newline()) continue;
            const Token& t = lx_.peek();
            if (t.kind != Token::Kind::name) break;
            const std::string& w = t.text;
            bool header_key =
                w == "mode" || w == "p" || w == "f" || w == "c" || w == "N" || w == "window";
            if (!header_key) break;
            // `p = ...` is a binding that happens to reuse a header key name.
            Token key = lx_.take();
            if (lx_.peek().kind == Token::Kind::punct && lx_.peek().text == "=") {
                pending_binding_ = key;
                break;
            }
            if (!seen.insert(key.text).second)
                bail(key.pos, "duplicate header field '" + key.text + "'");
            if (key.text == "mode") {
                Token m = expect_name("'charp' or 'mixed'");
                if (m.text != "charp" && m.text != "mixed")
                    bail(m.pos, "mode must be 'charp' or 'mixed'");
                doc_.header.mode = m.text;
                saw_mode = true;
            } else if (key.text == "window") {
                doc_.header.window_lo = static_cast<int>(signed_integer("window lower edge"));
                expect_punct(":");
                doc_.header.window_hi = static_cast<int>(signed_integer("window upper edge"));
                if (doc_.header.window_lo > doc_.header.window_hi)
                    bail(key.pos, "window lower edge exceeds upper edge");
                doc_.header.has_window = true;
            } else {
                long v = expect_integer("an integer header value");
                if (key.text == "p") {
                    if (v < 2) bail(key.pos, "p must be at least 2");
                    doc_.header.p = static_cast<uint32_t>(v);
                    saw_p = true;
                } else if (key.text == "f") {
                    if (v < 1) bail(key.pos, "f must be at least 1");
                    doc_.header.f = static_cast<uint32_t>(v);
                } else if (key.text == "c") {
                    if (v < 1) bail(key.pos, "c must be at least 1");
                    doc_.header.c = static_cast<uint32_t>(v);
                } else {
                    if (v < 1) bail(key.pos, "N must be at least 1");
                    doc_.header.N = v;
                    doc_.header.has_N = true;
                }
            }
            expect_line_end("the header field");
        }
        SourcePos here = lx_.peek().pos;
        if (!saw_mode) bail(here, "header must set mode (charp or mixed)");
        if (!saw_p) bail(here, "header must set p");
    }

    // ---- statements ----

    static bool is_directive_head(const std::string& w) {
        return w == "classify" || w == "conductor" || w == "residue" || w == "cartier" ||
               w == "as" || w == "kummerian" || w == "lift" || w == "filtration" ||
               w == "galois";
    }

    Binding parse_binding() {
        Token name = pending_binding_ ? *pending_binding_ : lx_.take();
        pending_binding_.reset();
        if (name.kind != Token::Kind::name) bail(name.pos, "expected a binding name");
        if (is_reserved(name.text))
            bail(name.pos, "'" + name.text + "' is reserved and cannot be bound");
        if (bound_.count(name.text)) bail(name.pos, "duplicate binding '" + name.text + "'");
        expect_punct("=");
        Binding b;
        b.name = name.text;
        b.pos = name.pos;
        b.expr = parse_expr();
        expect_line_end("the binding");
        bound_.insert(b.name);
        return b;
    }

    // Joins the two halves of a hyphenated command word, insisting they be
    // adjacent so `cartier - check` in an expression position stays an error.
    void expect_tail(const Token& head, const char* tail) {
        Token dash = lx_.take();
        bool adjacent = dash.kind == Token::Kind::punct && dash.text == "-" &&
                        dash.pos.line == head.pos.line &&
                        dash.pos.col == head.pos.col + static_cast<int>(head.text.size());
        if (!adjacent) bail(head.pos, "unknown directive '" + head.text + "'");
        Token t = lx_.take();
        bool joined = t.kind == Token::Kind::name && t.text == tail &&
                      t.pos.line == dash.pos.line && t.pos.col == dash.pos.col + 1;
        if (!joined)
            bail(head.pos, "unknown directive '" + head.text + "-" +
                               (t.kind == Token::Kind::name ? t.text : t.text) + "'");
    }

    std::string optional_kind() {
        const Token& t = lx_.peek();
        if (t.kind == Token::Kind::name &&
            (t.text == "etale" || t.text == "mu" || t.text == "alpha"))
            return lx_.take().text;
        return "";
    }

    std::string expect_kind() {
        Token t = expect_name("a torsor kind (etale, mu, or alpha)");
        if (t.text != "etale" && t.text != "mu" && t.text != "alpha")
            bail(t.pos, "expected a torsor kind (etale, mu, or alpha)");
        return t.text;
    }

    PointArg parse_point() {
        PointArg pt;
        if (lx_.peek().kind == Token::Kind::name && lx_.peek().text == "inf") {
            lx_.take();
            pt.at_infinity = true;
            return pt;
        }
        pt.expr = parse_expr();
        return pt;
    }

    Directive parse_directive() {
        Token head = lx_.take();
        Directive d;
        d.pos = head.pos;
        const std::string& w = head.text;
        if (w == "classify") {
            d.cmd = Directive::Cmd::classify;
            d.args.push_back(parse_expr());
        } else if (w == "conductor" || w == "residue") {
            d.cmd = w == "conductor" ? Directive::Cmd::conductor : Directive::Cmd::residue;
            d.kind = optional_kind();
            if (d.kind.empty()) d.kind = "mu";
            d.args.push_back(parse_expr());
            Token at = expect_name("'at'");
            if (at.text != "at") bail(at.pos, "expected 'at'");
            d.at = parse_point();
            d.has_at = true;
        } else if (w == "cartier") {
            expect_tail(head, "check");
            d.cmd = Directive::Cmd::cartier_check;
            if (lx_.peek().kind == Token::Kind::name && lx_.peek().text == "random") {
                lx_.take();
                d.random_count = expect_integer("a check count");
                if (d.random_count < 1) bail(head.pos, "check count must be positive");
            } else {
                d.kind = optional_kind();
                if (d.kind.empty()) d.kind = "mu";
                d.args.push_back(parse_expr());
            }
        } else if (w == "as") {
            expect_tail(head, "reduce");
            d.cmd = Directive::Cmd::as_reduce;
            d.args.push_back(parse_expr());
            if (lx_.peek().kind == Token::Kind::name && lx_.peek().text == "at") {
                lx_.take();
                d.at = parse_point();
                d.has_at = true;
            }
        } else if (w == "kummerian") {
            d.cmd = Directive::Cmd::kummerian;
            while (true) {
                Directive::NodeClause cl;
                cl.a = parse_node_side();
                expect_punct("~");
                cl.b = parse_node_side();
                d.nodes.push_back(std::move(cl));
                if (lx_.peek().kind == Token::Kind::punct && lx_.peek().text == ",") {
                    lx_.take();
                    while (skip_newline()) {} // allow node clauses across lines
                    continue;
                }
                break;
            }
        } else if (w == "lift") {
            d.cmd = Directive::Cmd::lift;
            d.kind = expect_kind();
            d.args.push_back(parse_expr());
        } else if (w == "filtration") {
            d.cmd = Directive::Cmd::filtration;
            d.args.push_back(parse_expr());
            while (true) {
                if (lx_.peek().kind == Token::Kind::punct && lx_.peek().text == ",") {
                    lx_.take();
                    d.args.push_back(parse_expr());
                    continue;
                }
                const Token& t = lx_.peek();
                bool starts_expr = t.kind == Token::Kind::integer ||
                                   (t.kind == Token::Kind::name && !is_directive_head(t.text)) ||
                                   (t.kind == Token::Kind::punct && (t.text == "(" || t.text == "-"));
                if (!starts_expr) break;
                d.args.push_back(parse_expr());
            }
        } else if (w == "galois") {
            expect_tail(head, "check");
            d.cmd = Directive::Cmd::galois_check;
            d.sigma = expect_integer("a Frobenius power");
            if (d.sigma < 0) bail(head.pos, "Frobenius power must be nonnegative");
            d.args.push_back(parse_expr());
        } else {
            bail(head.pos, "unknown directive '" + w + "'");
        }
        expect_line_end("the directive");
        return d;
    }

    Directive::NodeSide parse_node_side() {
        Directive::NodeSide s;
        s.kind = expect_kind();
        Token comp = expect_name("a component binding name");
        if (is_reserved(comp.text)) bail(comp.pos, "'" + comp.text + "' is not a binding");
        s.comp = comp.text;
        Token at = expect_name("'at'");
        if (at.text != "at") bail(at.pos, "expected 'at'");
        s.pt = parse_point();
        return s;
    }

    // ---- expressions ----

    ExprPtr mk(Expr e) { return std::make_shared<Expr>(std::move(e)); }

    ExprPtr parse_expr() { return parse_addsub(); }

    ExprPtr parse_addsub() {
        ExprPtr e = parse_muldiv();
        while (lx_.peek().kind == Token::Kind::punct &&
               (lx_.peek().text == "+" || lx_.peek().text == "-")) {
            Token op = lx_.take();
            ExprPtr rhs = parse_muldiv();
            Expr n;
            n.op = op.text == "+" ? Expr::Op::add : Expr::Op::sub;
            n.lhs = e;
            n.rhs = rhs;
            n.pos = op.pos;
            e = mk(std::move(n));
        }
        return e;
    }

    ExprPtr parse_muldiv() {
        ExprPtr e = parse_unary();
        while (lx_.peek().kind == Token::Kind::punct &&
               (lx_.peek().text == "*" || lx_.peek().text == "/")) {
            Token op = lx_.take();
            ExprPtr rhs = parse_unary();
            Expr n;
            n.op = op.text == "*" ? Expr::Op::mul : Expr::Op::div;
            n.lhs = e;
            n.rhs = rhs;
            n.pos = op.pos;
            e = mk(std::move(n));
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (lx_.peek().kind == Token::Kind::punct && lx_.peek().text == "-") {
            Token op = lx_.take();
            Expr n;
            n.op = Expr::Op::neg;
            n.lhs = parse_unary();
            n.pos = op.pos;
            return mk(std::move(n));
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        if (lx_.peek().kind == Token::Kind::punct && lx_.peek().text == "^") {
            Token op = lx_.take();
            long e = signed_integer("an integer exponent");
            Expr n;
            n.op = Expr::Op::pow;
            n.lhs = base;
            n.value = e;
            n.pos = op.pos;
            return mk(std::move(n));
        }
        return base;
    }

    ExprPtr parse_primary() {
        Token t = lx_.take();
        Expr n;
        n.pos = t.pos;
        if (t.kind == Token::Kind::integer) {
            n.op = Expr::Op::integer;
            n.value = t.value;
            return mk(std::move(n));
        }
        if (t.kind == Token::Kind::punct && t.text == "(") {
            ExprPtr inner = parse_expr();
            expect_punct(")");
            return inner;
        }
        if (t.kind != Token::Kind::name) bail(t.pos, "expected a value, got '" + t.text + "'");
        long gi;
        if (t.text == "t") {
            n.op = Expr::Op::sym_t;
        } else if (t.text == "T") {
            n.op = Expr::Op::sym_T;
        } else if (t.text == "l") {
            n.op = Expr::Op::sym_lambda;
        } else if (t.text == "pi") {
            n.op = Expr::Op::sym_pi;
        } else if (is_gen_token(t.text, &gi)) {
            n.op = Expr::Op::sym_gen;
            n.value = gi;
        } else if (is_reserved(t.text)) {
            bail(t.pos, "keyword '" + t.text + "' cannot appear in an expression");
        } else {
            if (!bound_.count(t.text)) bail(t.pos, "unbound name '" + t.text + "'");
            n.op = Expr::Op::name;
            n.name = t.text;
        }
        return mk(std::move(n));
    }

    // ---- mode / realm checking ----

    enum class Realm { flexible, charp, annulus };

    struct Uses {
        bool t = false, annulus = false;
    };

    void scan(const ExprPtr& e, Uses* u) {
        switch (e->op) {
            case Expr::Op::sym_t:
                u->t = true;
                break;
            case Expr::Op::sym_T:
            case Expr::Op::sym_lambda:
            case Expr::Op::sym_pi:
                u->annulus = true;
                break;
            case Expr::Op::sym_gen:
                if (e->value != static_cast<long>(doc_.header.f))
                    bail(e->pos, "a" + std::to_string(e->value) +
                                     " is not the generator of this field (f = " +
                                     std::to_string(doc_.header.f) + ")");
                if (doc_.header.f == 1)
                    bail(e->pos, "the prime field has no generator symbol");
                break;
            case Expr::Op::name: {
                Realm r = realms_.at(e->name);
                if (r == Realm::charp) u->t = true;
                if (r == Realm::annulus) u->annulus = true;
                break;
            }
            default:
                break;
        }
        if (e->lhs) scan(e->lhs, u);
        if (e->rhs) scan(e->rhs, u);
    }

    Realm realm_of(const ExprPtr& e) {
        Uses u;
        scan(e, &u);
        if (u.t && u.annulus)
            bail(e->pos, "expression mixes the char-p coordinate t with annulus symbols");
        if (u.t) return Realm::charp;
        if (u.annulus) return Realm::annulus;
        return Realm::flexible;
    }

    void require_charp(const ExprPtr& e, const char* what) {
        if (realm_of(e) == Realm::annulus)
            bail(e->pos, std::string(what) + " must be a char-p expression (no T, l, pi)");
    }

    void require_annulus(const ExprPtr& e, const char* what) {
        if (realm_of(e) == Realm::charp)
            bail(e->pos, std::string(what) + " must be an annulus expression (no t)");
    }

    void require_scalar(const PointArg& pt) {
        if (pt.at_infinity) return;
        if (realm_of(pt.expr) != Realm::flexible)
            bail(pt.expr->pos, "a point must be a scalar expression");
    }

    void check_types() {
        bool charp_mode = doc_.header.mode == "charp";
        for (const Binding& b : doc_.bindings) {
            Realm r = realm_of(b.expr);
            if (charp_mode && r == Realm::annulus)
                bail(b.expr->pos, "annulus symbols (T, l, pi) need mode mixed");
            realms_[b.name] = r;
        }
        for (const Directive& d : doc_.directives) {
            switch (d.cmd) {
                case Directive::Cmd::classify:
                case Directive::Cmd::filtration:
                case Directive::Cmd::galois_check:
                case Directive::Cmd::lift:
                    if (charp_mode)
                        bail(d.pos, std::string("'") + cmd_name(d.cmd) +
                                        "' needs mode mixed");
                    break;
                default:
                    break;
            }
            switch (d.cmd) {
                case Directive::Cmd::classify:
                    require_annulus(d.args[0], "the classify argument");
                    break;
                case Directive::Cmd::conductor:
                case Directive::Cmd::residue:
                    require_charp(d.args[0], "the torsor datum");
                    require_scalar(d.at);
                    break;
                case Directive::Cmd::cartier_check:
                    if (!d.args.empty()) require_charp(d.args[0], "the torsor datum");
                    break;
                case Directive::Cmd::as_reduce:
                    require_charp(d.args[0], "the datum");
                    if (d.has_at) require_scalar(d.at);
                    break;
                case Directive::Cmd::kummerian:
                    for (const auto& cl : d.nodes) {
                        for (const Directive::NodeSide* s : {&cl.a, &cl.b}) {
                            if (!realms_.count(s->comp))
                                bail(d.pos, "unbound name '" + s->comp + "'");
                            if (realms_.at(s->comp) == Realm::annulus)
                                bail(d.pos, "component '" + s->comp +
                                                "' must be a char-p expression");
                            require_scalar(s->pt);
                        }
                    }
                    break;
                case Directive::Cmd::lift:
                    require_charp(d.args[0], "the lift datum");
                    break;
                case Directive::Cmd::filtration:
                    for (const ExprPtr& a : d.args)
                        require_annulus(a, "a filtration argument");
                    break;
                case Directive::Cmd::galois_check:
                    require_annulus(d.args[0], "the galois-check argument");
                    break;
            }
        }
    }

    Lexer lx_;
    Document doc_;
    std::set<std::string> bound_;
    std::map<std::string, Realm> realms_;
    std::optional<Token> pending_binding_;
};

// ---- canonical printer ----

// Precedence levels used for minimal parenthesisation: addition 1,
// multiplication 2, unary minus 3, power 4, atoms 5.
int level_of(const Expr& e) {
    switch (e.op) {
        case Expr::Op::add:
        case Expr::Op::sub:
            return 1;
        case Expr::Op::mul:
        case Expr::Op::div:
            return 2;
        case Expr::Op::neg:
            return 3;
        case Expr::Op::pow:
            return 4;
        default:
            return 5;
    }
}

void print_at(const ExprPtr& e, int min_level, std::string* out) {
    int lv = level_of(*e);
    bool parens = lv < min_level;
    if (parens) *out += "(";
    switch (e->op) {
        case Expr::Op::integer:
            *out += std::to_string(e->value);
            break;
        case Expr::Op::name:
            *out += e->name;
            break;
        case Expr::Op::sym_t:
            *out += "t";
            break;
        case Expr::Op::sym_T:
            *out += "T";
            break;
        case Expr::Op::sym_lambda:
            *out += "l";
            break;
        case Expr::Op::sym_pi:
            *out += "pi";
            break;
        case Expr::Op::sym_gen:
            *out += "a" + std::to_string(e->value);
            break;
        case Expr::Op::add:
        case Expr::Op::sub:
            print_at(e->lhs, 1, out);
            *out += e->op == Expr::Op::add ? " + " : " - ";
            print_at(e->rhs, 2, out);
            break;
        case Expr::Op::mul:
        case Expr::Op::div:
            print_at(e->lhs, 2, out);
            *out += e->op == Expr::Op::mul ? "*" : "/";
            print_at(e->rhs, 3, out);
            break;
        case Expr::Op::neg:
            *out += "-";
            print_at(e->lhs, 3, out);
            break;
        case Expr::Op::pow:
            print_at(e->lhs, 5, out);
            *out += "^" + std::to_string(e->value);
            break;
    }
    if (parens) *out += ")";
}

std::string print_point(const PointArg& pt) {
    if (pt.at_infinity) return "inf";
    return print_expr(pt.expr);
}

std::string print_directive(const Directive& d) {
    std::string out = cmd_name(d.cmd);
    switch (d.cmd) {
        case Directive::Cmd::classify:
            out += " " + print_expr(d.args[0]);
            break;
        case Directive::Cmd::conductor:
        case Directive::Cmd::residue:
            out += " " + d.kind + " " + print_expr(d.args[0]) + " at " + print_point(d.at);
            break;
        case Directive::Cmd::cartier_check:
            if (d.random_count > 0)
                out += " random " + std::to_string(d.random_count);
            else
                out += " " + d.kind + " " + print_expr(d.args[0]);
            break;
        case Directive::Cmd::as_reduce:
            out += " " + print_expr(d.args[0]);
            if (d.has_at) out += " at " + print_point(d.at);
            break;
        case Directive::Cmd::kummerian: {
            bool first = true;
            for (const auto& cl : d.nodes) {
                out += first ? " " : ", ";
                first = false;
                out += cl.a.kind + " " + cl.a.comp + " at " + print_point(cl.a.pt) + " ~ " +
                       cl.b.kind + " " + cl.b.comp + " at " + print_point(cl.b.pt);
            }
            break;
        }
        case Directive::Cmd::lift:
            out += " " + d.kind + " " + print_expr(d.args[0]);
            break;
        case Directive::Cmd::filtration: {
            bool first = true;
            for (const ExprPtr& a : d.args) {
                out += first ? " " : ", ";
                first = false;
                out += print_expr(a);
            }
            break;
        }
        case Directive::Cmd::galois_check:
            out += " " + std::to_string(d.sigma) + " " + print_expr(d.args[0]);
            break;
    }
    return out;
}

} // namespace

const char* cmd_name(Directive::Cmd c) {
    switch (c) {
        case Directive::Cmd::classify: return "classify";
        case Directive::Cmd::conductor: return "conductor";
        case Directive::Cmd::residue: return "residue";
        case Directive::Cmd::cartier_check: return "cartier-check";
        case Directive::Cmd::as_reduce: return "as-reduce";
        case Directive::Cmd::kummerian: return "kummerian";
        case Directive::Cmd::lift: return "lift";
        case Directive::Cmd::filtration: return "filtration";
        case Directive::Cmd::galois_check: return "galois-check";
    }
    return "?";
}

Document parse_document(const std::string& text) { return Parser(text).parse(); }

std::string print_expr(const ExprPtr& e) {
    std::string out;
    print_at(e, 1, &out);
    return out;
}

std::string print_document(const Document& doc) {
    std::ostringstream out;
    out << "mode " << doc.header.mode << "\n";
    out << "p " << doc.header.p << "\n";
    out << "f " << doc.header.f << "\n";
    out << "c " << doc.header.c << "\n";
    if (doc.header.has_N) out << "N " << doc.header.N << "\n";
    if (doc.header.has_window)
        out << "window " << doc.header.window_lo << ":" << doc.header.window_hi << "\n";
    if (!doc.bindings.empty()) {
        out << "\n";
        for (const Binding& b : doc.bindings)
            out << b.name << " = " << print_expr(b.expr) << "\n";
    }
    if (!doc.directives.empty()) {
        out << "\n";
        for (const Directive& d : doc.directives) out << print_directive(d) << "\n";
    }
    return out.str();
}

} // namespace rankp::cli
