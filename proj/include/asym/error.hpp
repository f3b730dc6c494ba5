#pragma once

#include <stdexcept>
#include <string>

namespace asym {

enum class errc {
    invalid_shape,
    degenerate_shape,
    shape_mismatch,
    invalid_parameter,
    not_a_reflection,
    unbalanced_split,
    undefined_correlation,
    image_mismatch,
    decode_error,
    empty_region,
    too_few_points,
    degenerate_configuration,
    singular_homography,
    invalid_input,
    parse_error,
};

const char* errc_name(errc code) noexcept;

class error : public std::runtime_error {
public:
    error(errc code, const std::string& message);
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] void raise(errc code, const std::string& message);

} // namespace asym
