#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qwabs/coin.hpp"

namespace qwabs::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;

/// "hadamard", "rho=<x>", "sym=<eta,phi,psi>" or
/// "custom=<a_re,a_im,b_re,b_im,c_re,c_im,d_re,d_im>".
CoinSpec parse_coin_spec(const std::string& text);

/// "re,im" (a bare "re" is accepted too).
cplx parse_complex(const std::string& text);

/// Normalises (alpha, beta). Writes a warning to `warn` when the input norm
/// is off by more than 1e-9; throws ValidationError for the zero vector.
QubitState parse_qubit(const std::string& alpha, const std::string& beta, std::ostream& warn);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qwabs::cli
