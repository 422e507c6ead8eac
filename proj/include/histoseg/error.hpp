#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace histoseg {

enum class Errc {
    file_not_found,
    malformed_header,
    unsupported_bit_depth,
    unsupported_format,
    image_too_large,
    io_error,
    invalid_argument,
    out_of_domain,
    dimension_mismatch,
    no_candidate,
    degenerate_histogram,
    degenerate_range,
    zero_reference,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can map it to a stable exit status.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace histoseg
