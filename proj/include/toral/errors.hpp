#pragma once

#include <stdexcept>
#include <string>

namespace toral {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotASublattice : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct NotContained : Error { using Error::Error; };
struct ZeroLattice : Error { using Error::Error; };
struct NotUnimodular : Error { using Error::Error; };
struct GroupTooLarge : Error { using Error::Error; };
struct NotInvariant : Error { using Error::Error; };
struct NotEquivariant : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct ModelTooLarge : Error { using Error::Error; };
struct NotASection : Error { using Error::Error; };
struct UnknownTag : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace toral
