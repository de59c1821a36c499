#pragma once

#include <stdexcept>
#include <string>

namespace stylo {

// Base for all recoverable errors raised by the library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EmptyParagraph : Error {
    EmptyParagraph() : Error("paragraph is empty or whitespace-only") {}
    explicit EmptyParagraph(const std::string& what) : Error(what) {}
};

struct EmptyDocument : Error {
    EmptyDocument() : Error("document has no paragraphs") {}
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

struct DegenerateLabels : Error {
    DegenerateLabels() : Error("training set contains a single class") {}
};

struct ShapeMismatch : Error {
    using Error::Error;
};

struct MalformedModel : Error {
    using Error::Error;
};

struct DegenerateFold : Error {
    using Error::Error;
};

struct SingleClass : Error {
    SingleClass() : Error("AUC requires both classes to be present") {}
};

struct InvalidProfile : Error {
    using Error::Error;
};

}  // namespace stylo
