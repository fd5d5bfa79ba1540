#pragma once

#include <stdexcept>
#include <string>

namespace rankp {

// Every failure the library can certify gets a stable tag.  The CLI maps
// these one-to-one onto machine-readable error objects, so the set here is
// part of the external interface.
enum class err {
    bad_parameters,       // malformed construction data (reducible modulus, bad window, ...)
    zero_function,        // dlog of 0, inversion of 0
    window_too_small,     // a Laurent window does not reach the coefficients the answer needs
    precision_exhausted,  // the answer depends on pi-adic digits beyond the carried precision
    not_a_unit,           // inversion of a non-unit
    positive_pi_content,  // residue reduction of an element divisible by pi
    ramified_input_content, // pi-content of a Kummer datum not divisible by p
    extension_required,   // classification needs a ramified base change; payload = minimal c
    bad_n,                // level outside 0 < n <= v(lambda)
    needs_ramified_extension, // alpha_p lift impossible over the current tower
    trivial_datum,        // lift of a datum that is a p-th power (trivial class)
    scheme_mismatch,      // mixed-torsor arithmetic across different configurations
    missing_torsor_at_node, // kummerian check with no designated torsor on one side
    parse_error,          // CLI document / expression syntax or type error
};

const char* err_name(err e);

class error : public std::runtime_error {
  public:
    error(err kind, const std::string& what_arg, long payload = 0)
        : std::runtime_error(what_arg), kind_(kind), payload_(payload) {}

    err kind() const { return kind_; }
    // For extension_required this is the minimal ramification multiplier c.
    long payload() const { return payload_; }

  private:
    err kind_;
    long payload_;
};

[[noreturn]] inline void fail(err kind, const std::string& msg, long payload = 0) {
    throw error(kind, std::string(err_name(kind)) + ": " + msg, payload);
}

} // namespace rankp
