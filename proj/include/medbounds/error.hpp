#pragma once

#include <stdexcept>
#include <string>

namespace medb {

enum class ErrorKind {
    invalid_input,       // malformed config, data, or arguments
    io,                  // file could not be read or written
    singular_design,     // design matrix lacks full column rank
    no_convergence,      // Newton iterations exhausted
    separation,          // complete or quasi-complete separation detected
    degenerate,          // degenerate mediator effect or probability at 0/1
    non_psd,             // covariance input is not positive semidefinite
    validation_failed,   // an oracle check disagreed beyond tolerance
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

    /// True for failures caused by the numbers rather than by user input.
    bool numerical() const noexcept {
        return kind_ == ErrorKind::singular_design || kind_ == ErrorKind::no_convergence ||
               kind_ == ErrorKind::separation || kind_ == ErrorKind::degenerate ||
               kind_ == ErrorKind::non_psd;
    }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace medb
