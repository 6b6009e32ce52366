#pragma once

#include <stdexcept>
#include <string>

namespace dpwlab {

// Base for every error raised by the library. `kind()` is stable text used
// by the CLI to pick exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg)
        : std::runtime_error(kind + ": " + msg), kind_(std::move(kind)) {}
    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& msg) : Error("ShapeError", msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("DomainError", msg) {}
};

struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& msg) : Error("NotUnimodular", msg) {}
};

struct NotInBigCell : Error {
    explicit NotInBigCell(const std::string& msg) : Error("NotInBigCell", msg) {}
};

struct OutsideCell : Error {
    explicit OutsideCell(const std::string& msg) : Error("OutsideCell", msg) {}
};

struct PoleOnPath : Error {
    explicit PoleOnPath(const std::string& msg) : Error("PoleOnPath", msg) {}
};

struct ModeError : Error {
    explicit ModeError(const std::string& msg) : Error("ModeError", msg) {}
};

struct NotAlgebraic : Error {
    explicit NotAlgebraic(const std::string& msg) : Error("NotAlgebraic", msg) {}
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int column)
        : Error("ParseError", msg + " (line " + std::to_string(line) + ", column " +
                                  std::to_string(column) + ")"),
          line(line), column(column) {}
    explicit ParseError(const std::string& msg) : Error("ParseError", msg), line(0), column(0) {}
    int line;
    int column;
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("ValidationError", msg) {}
};

struct NumericalError : Error {
    explicit NumericalError(const std::string& msg) : Error("NumericalError", msg) {}
};

struct Unsupported : Error {
    explicit Unsupported(const std::string& msg) : Error("Unsupported", msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error("IoError", msg) {}
};

} // namespace dpwlab
