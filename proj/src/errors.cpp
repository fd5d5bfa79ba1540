#include "rankp/errors.hpp"

namespace rankp {

const char* err_name(err e) {
    switch (e) {
        case err::bad_parameters: return "BadParameters";
        case err::zero_function: return "ZeroFunction";
        case err::window_too_small: return "WindowTooSmall";
        case err::precision_exhausted: return "PrecisionExhausted";
        case err::not_a_unit: return "NotAUnit";
        case err::positive_pi_content: return "PositivePiContent";
        case err::ramified_input_content: return "RamifiedInputContent";
        case err::extension_required: return "ExtensionRequired";
        case err::bad_n: return "BadN";
        case err::needs_ramified_extension: return "NeedsRamifiedExtension";
        case err::trivial_datum: return "TrivialDatum";
        case err::scheme_mismatch: return "SchemeMismatch";
        case err::missing_torsor_at_node: return "MissingTorsorAtNode";
        case err::parse_error: return "ParseError";
    }
    return "UnknownError";
}

} // namespace rankp
