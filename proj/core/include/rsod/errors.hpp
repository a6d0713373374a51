#pragma once

#include <stdexcept>
#include <string>

namespace rsod {

// Base class for all data-level failures. The CLI maps any rsod::Error to
// exit code 2; programming errors (std::invalid_argument &c.) are bugs and
// are not caught.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A box violating x1 < x2, y1 < y2, coordinates >= 0.
class InvalidBox : public Error {
    using Error::Error;
};

// Rescaling collapsed a box to zero width or height.
class DegenerateBox : public Error {
    using Error::Error;
};

// Source annotation file violates its format contract.
class MalformedAnnotation : public Error {
    using Error::Error;
};

// Annotation references a category id with no known name.
class UnknownCategoryId : public Error {
    using Error::Error;
};

// Official-split build requested but a record carries no declared split.
class MissingOfficialSplit : public Error {
    using Error::Error;
};

// Transcript id that matches no ground-truth sample.
class UnknownImageId : public Error {
    using Error::Error;
};

// Transcript or sample JSONL line violates its schema.
class MalformedJsonl : public Error {
    using Error::Error;
};

// Matrix/vector operands with non-conformable dimensions.
class DimensionMismatch : public Error {
    using Error::Error;
};

// Tensor shape does not match the noise spec.
class ShapeMismatch : public Error {
    using Error::Error;
};

class IoError : public Error {
    using Error::Error;
};

}  // namespace rsod
