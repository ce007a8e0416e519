#pragma once

#include <stdexcept>
#include <string>

namespace bubble {

/// Invalid or inconsistent data: malformed input files, violated operation
/// preconditions, impossible parameter values. The CLI maps this to exit
/// code 1 (usage errors exit with 2).
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bubble
