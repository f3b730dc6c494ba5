#include "asym/error.hpp"

namespace asym {

const char* errc_name(errc code) noexcept {
    switch (code) {
    case errc::invalid_shape: return "InvalidShape";
    case errc::degenerate_shape: return "DegenerateShape";
    case errc::shape_mismatch: return "ShapeMismatch";
    case errc::invalid_parameter: return "InvalidParameter";
    case errc::not_a_reflection: return "NotAReflection";
    case errc::unbalanced_split: return "UnbalancedSplit";
    case errc::undefined_correlation: return "UndefinedCorrelation";
    case errc::image_mismatch: return "ImageMismatch";
    case errc::decode_error: return "DecodeError";
    case errc::empty_region: return "EmptyRegion";
    case errc::too_few_points: return "TooFewPoints";
    case errc::degenerate_configuration: return "DegenerateConfiguration";
    case errc::singular_homography: return "SingularHomography";
    case errc::invalid_input: return "InvalidInput";
    case errc::parse_error: return "ParseError";
    }
    return "UnknownError";
}

error::error(errc code, const std::string& message)
    : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

void raise(errc code, const std::string& message) {
    throw error(code, message);
}

} // namespace asym
