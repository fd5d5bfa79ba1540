#pragma once

#include <memory>
#include <string>
#include <vector>

#include "rankp/errors.hpp"

namespace rankp::cli {

struct SourcePos {
    int line = 0;
    int col = 0;
};

// Expression tree for the input language.  Leaves are integer literals,
// binding names, and the built-in symbols t (char-p coordinate), T (annulus
// coordinate), l (lambda), pi, and the residue-field generator a<f>.
// Exponents are integer literals only, stored inline on the pow node.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    enum class Op {
        integer,
        name,
        sym_t,
        sym_T,
        sym_lambda,
        sym_pi,
        sym_gen,
        add,
        sub,
        neg,
        mul,
        div,
        pow,
    };

    Op op;
    long value = 0;     // integer literal; exponent for pow; index for sym_gen
    std::string name;   // name leaf
    ExprPtr lhs, rhs;   // children (pow uses lhs only)
    SourcePos pos;
};

struct Binding {
    std::string name;
    ExprPtr expr;
    SourcePos pos;
};

// Point of P^1 in a directive: `inf` or a scalar expression over the
// residue field.
struct PointArg {
    bool at_infinity = false;
    ExprPtr expr; // null iff at_infinity
};

struct Directive {
    enum class Cmd {
        classify,
        conductor,
        residue,
        cartier_check,
        as_reduce,
        kummerian,
        lift,
        filtration,
        galois_check,
    };

    // One side of a kummerian node: designated kind, component binding name,
    // and the node point on that component's chart.
    struct NodeSide {
        std::string kind; // "etale" | "mu" | "alpha"
        std::string comp;
        PointArg pt;
    };
    struct NodeClause {
        NodeSide a, b;
    };

    Cmd cmd;
    SourcePos pos;
    std::vector<ExprPtr> args;      // expression arguments, command-specific
    PointArg at;                    // conductor / residue / as-reduce
    bool has_at = false;
    std::string kind;               // torsor kind word where one applies
    long sigma = 0;                 // galois-check Frobenius power
    long random_count = 0;          // cartier-check random form (0 = expression form)
    std::vector<NodeClause> nodes;  // kummerian
};

struct Header {
    std::string mode; // "charp" | "mixed"
    uint32_t p = 0;
    uint32_t f = 1;
    uint32_t c = 1;
    long N = 0;
    int window_lo = 0;
    int window_hi = 0;
    bool has_N = false;
    bool has_window = false;
};

struct Document {
    Header header;
    std::vector<Binding> bindings;
    std::vector<Directive> directives;
};

// Parses a full document.  Raises parse_error with a line:col message on
// syntax errors, duplicate or reserved binding names, references to unbound
// names, missing header fields, and mode/type violations (`T` in charp mode,
// tower commands in charp mode, mixing t with T in one expression).
Document parse_document(const std::string& text);

// Canonical printer.  parse(print(parse(x))) == parse(x); printing a parsed
// document twice gives identical text.
std::string print_document(const Document& doc);
std::string print_expr(const ExprPtr& e);

const char* cmd_name(Directive::Cmd c);

} // namespace rankp::cli
