#pragma once

#include <stdexcept>
#include <string>

namespace segseed {

// Base for all library errors. The category maps to the CLI exit-code
// contract: data errors exit 2, algorithm errors exit 3.
class Error : public std::runtime_error {
public:
    enum class Category { data, algorithm };

    Error(Category category, const std::string& message)
        : std::runtime_error(message), category_(category) {}

    Category category() const { return category_; }

private:
    Category category_;
};

// Malformed or inconsistent input data: parse failures, dimension
// mismatches, out-of-range values.
class DataError : public Error {
public:
    explicit DataError(const std::string& message)
        : Error(Category::data, message) {}
};

// A well-formed request the algorithm cannot satisfy: empty candidate
// pool, rejected seed, invalid configuration.
class AlgorithmError : public Error {
public:
    explicit AlgorithmError(const std::string& message)
        : Error(Category::algorithm, message) {}
};

}  // namespace segseed
