#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sentimarket {

// Thrown when bullishness drops below the numerical floor and the relative
// sentiment return can no longer be formed. `step` is the 1-based index of
// the update that failed.
class SentimentCollapse : public std::runtime_error {
public:
    SentimentCollapse(const std::string& what, std::size_t step)
        : std::runtime_error(what), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

// Malformed or inconsistent input file. `line` is 1-based; 0 means the
// problem is not tied to a specific line (e.g. the file cannot be opened).
class InputError : public std::runtime_error {
public:
    InputError(const std::string& what, std::string path, std::size_t line = 0)
        : std::runtime_error(what), path_(std::move(path)), line_(line) {}

    const std::string& path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string path_;
    std::size_t line_;
};

}  // namespace sentimarket
