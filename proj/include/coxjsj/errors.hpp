#ifndef COXJSJ_ERRORS_HPP
#define COXJSJ_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace coxjsj {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text or a graph that is not simplicial.
class ParseError : public Error {
public:
    ParseError(const std::string &what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// A caller broke an operation's precondition (unknown vertex, wrong set size, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// A bounded search ran out of budget before it could certify its answer.
class InconclusiveError : public Error {
public:
    InconclusiveError(const std::string &what, std::size_t nodes)
        : Error("inconclusive: " + what + " (search nodes: " + std::to_string(nodes) + ")"), nodes_(nodes) {}

    std::size_t nodes() const { return nodes_; }

private:
    std::size_t nodes_;
};

/// Tree assembly found zero or several candidates where exactly one was required,
/// or a built tree failed validation.
class BuildError : public Error {
public:
    using Error::Error;
};

/// The Cayley ball outgrew its element cap.
class CapExceeded : public Error {
public:
    CapExceeded(std::size_t cap, int attained_radius)
        : Error("cap exceeded: more than " + std::to_string(cap) + " elements; complete up to radius " +
                std::to_string(attained_radius)),
          cap_(cap), attained_radius_(attained_radius) {}

    std::size_t cap() const { return cap_; }
    int attained_radius() const { return attained_radius_; }

private:
    std::size_t cap_;
    int attained_radius_;
};

} // namespace coxjsj

#endif
