#pragma once

#include <stdexcept>
#include <string>

namespace hadpos {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidHook : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct DuplicateExponent : Error { using Error::Error; };
struct NonHermitianInput : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct RankExceedsOne : Error { using Error::Error; };
struct ZeroMatrix : Error { using Error::Error; };
struct ZeroVector : Error { using Error::Error; };
struct TailBelowN : Error { using Error::Error; };
struct BadExponentOrder : Error { using Error::Error; };
struct KernelNotContained : Error { using Error::Error; };
struct TOutOfRange : Error { using Error::Error; };
struct ZeroDiagonal : Error { using Error::Error; };
struct StructureMismatch : Error { using Error::Error; };
struct NotCoarser : Error { using Error::Error; };
struct BadModulus : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

} // namespace hadpos
