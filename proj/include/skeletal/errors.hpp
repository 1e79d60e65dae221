#pragma once

#include <stdexcept>
#include <string>

namespace skeletal {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ArgumentError : Error { using Error::Error; };
struct IndexError : Error { using Error::Error; };
struct SizeError : Error { using Error::Error; };
struct LayoutError : Error { using Error::Error; };
struct ColoringError : Error { using Error::Error; };
struct UniformityError : Error { using Error::Error; };
struct PreconditionError : Error { using Error::Error; };
struct SetupError : Error { using Error::Error; };
struct DegeneracyError : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct FileFormatError : Error { using Error::Error; };

} // namespace skeletal
