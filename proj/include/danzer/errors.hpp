#pragma once

#include <stdexcept>
#include <string>

namespace danzer {

// Stable error codes; the CLI maps them 1:1 onto its error output.
enum class errc {
    dimension_mismatch,
    volume_too_small,
    out_of_orthant,
    not_totally_real,
    degenerate_roots,
    window_too_large,
    too_many_points,
    flow_too_large,
    eps_too_small,
    bad_input,
};

inline const char* errc_name(errc e) {
    switch (e) {
        case errc::dimension_mismatch: return "dimension_mismatch";
        case errc::volume_too_small: return "volume_too_small";
        case errc::out_of_orthant: return "out_of_orthant";
        case errc::not_totally_real: return "not_totally_real";
        case errc::degenerate_roots: return "degenerate_roots";
        case errc::window_too_large: return "window_too_large";
        case errc::too_many_points: return "too_many_points";
        case errc::flow_too_large: return "flow_too_large";
        case errc::eps_too_small: return "eps_too_small";
        case errc::bad_input: return "bad_input";
    }
    return "unknown";
}

class error : public std::runtime_error {
  public:
    error(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    errc code() const noexcept { return code_; }

  private:
    errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& msg) { throw error(c, msg); }

}  // namespace danzer
