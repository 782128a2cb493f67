#pragma once

#include <stdexcept>
#include <string>

namespace ivts {

/// Broad failure category; the CLI maps each to a process exit code.
enum class ErrorKind { usage, data, numeric };

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// Throws a copy of the same dynamic type with `prefix` prepended.
    [[noreturn]] virtual void rethrow_prefixed(const std::string& prefix) const {
        throw Error(kind_, prefix + what());
    }

private:
    ErrorKind kind_;
};

#define IVTS_DEFINE_ERROR(Name, Kind)                                          \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& what) : Error(Kind, what) {}          \
        [[noreturn]] void rethrow_prefixed(const std::string& prefix)          \
            const override {                                                   \
            throw Name(prefix + what());                                       \
        }                                                                      \
    }

IVTS_DEFINE_ERROR(InvalidArgument, ErrorKind::usage);
IVTS_DEFINE_ERROR(LengthMismatch, ErrorKind::data);
IVTS_DEFINE_ERROR(DimensionMismatch, ErrorKind::data);
IVTS_DEFINE_ERROR(SeriesTooShort, ErrorKind::data);
IVTS_DEFINE_ERROR(BlockGridInvalid, ErrorKind::data);
IVTS_DEFINE_ERROR(EmptyInput, ErrorKind::data);
IVTS_DEFINE_ERROR(DataError, ErrorKind::data);
IVTS_DEFINE_ERROR(IoError, ErrorKind::data);
IVTS_DEFINE_ERROR(NonFinite, ErrorKind::numeric);
IVTS_DEFINE_ERROR(NegativeSquaredDistance, ErrorKind::numeric);

#undef IVTS_DEFINE_ERROR

} // namespace ivts
