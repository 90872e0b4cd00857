#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace cpdag {

/// Raised when a text input (graph, independence, or knowledge file) is
/// malformed.  `line` is 1-based; 0 means the location is unknown.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& message)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                      : message),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// A reportable failure of one of the pipeline phases.  Unlike exceptions,
/// which signal misuse of the API, a Failure is an expected outcome: the
/// input has no answer of the requested kind.
struct Failure {
    std::string where;   // which phase or operation gave up
    std::string reason;  // human-readable cause

    std::string to_string() const {
        if (where.empty()) return reason;
        return where + ": " + reason;
    }
};

/// Minimal success-or-failure carrier.
template <typename T>
class Result {
public:
    Result(T value) : state_(std::move(value)) {}
    Result(Failure failure) : state_(std::move(failure)) {}

    static Result failure(std::string where, std::string reason) {
        return Result(Failure{std::move(where), std::move(reason)});
    }

    bool ok() const noexcept { return std::holds_alternative<T>(state_); }
    explicit operator bool() const noexcept { return ok(); }

    const T& value() const& {
        require(ok(), "Result::value on failed result");
        return std::get<T>(state_);
    }
    T& value() & {
        require(ok(), "Result::value on failed result");
        return std::get<T>(state_);
    }
    T&& take() && {
        require(ok(), "Result::take on failed result");
        return std::get<T>(std::move(state_));
    }

    const Failure& error() const& {
        require(!ok(), "Result::error on successful result");
        return std::get<Failure>(state_);
    }

private:
    static void require(bool condition, const char* message) {
        if (!condition) throw std::logic_error(message);
    }

    std::variant<T, Failure> state_;
};

}  // namespace cpdag
