#ifndef DYNK_ERRORS_HPP
#define DYNK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dynk {

enum class Errc {
  duplicate_id,
  nonpositive_weight,
  unknown_matrix_id,
  unknown_id,
  degenerate_space,
  invalid_metric,
  empty_centers,
  empty_space,
  too_large,
  candidate_mismatch,
  already_present,
  not_present,
  not_enough_candidates,
  membership_violation,
  nonpositive_lambda,
  k_out_of_range,
  grid_search_failed,
  parse_error,
};

const char* errc_name(Errc c);

// Domain-level failure; callers match on the code, not the message.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace dynk

#endif  // DYNK_ERRORS_HPP
