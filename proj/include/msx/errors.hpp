#pragma once

#include <stdexcept>
#include <string>

namespace msx {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define MSX_ERROR(Name)                                                       \
    struct Name : Error {                                                     \
        explicit Name(const std::string& w) : Error(#Name, w) {}              \
    }

// tree surgery
MSX_ERROR(OverlapError);
MSX_ERROR(RootMixError);
MSX_ERROR(ArityError);
MSX_ERROR(EmptyForestError);
MSX_ERROR(LeafCutError);
MSX_ERROR(SyntaxError);
MSX_ERROR(ValidationError);
MSX_ERROR(InventoryError);

// syntax
MSX_ERROR(NotASuccessorError);
MSX_ERROR(PartialHeadError);

// morphology
MSX_ERROR(UnknownFeatureError);

// operads
MSX_ERROR(ArityMismatchError);
MSX_ERROR(IndexError);
MSX_ERROR(ColorMismatchError);
MSX_ERROR(MatchError);

// morphosyntax
MSX_ERROR(NotACherryError);
MSX_ERROR(GammaError);
MSX_ERROR(NoHeadError);
MSX_ERROR(EmptySplitError);
MSX_ERROR(PartitionError);
MSX_ERROR(NoInsertionError);
MSX_ERROR(NotSubsetError);
MSX_ERROR(NotAlignedError);

// front end
MSX_ERROR(IOError);

#undef MSX_ERROR

// Failure of one step in a sequence of operations.
class GeneratorError : public Error {
public:
    GeneratorError(size_t index, const Error& inner)
        : Error("GeneratorError", "step " + std::to_string(index) + ": " + inner.what()),
          index_(index), inner_kind_(inner.kind()) {}
    size_t index() const { return index_; }
    const std::string& inner_kind() const { return inner_kind_; }

private:
    size_t index_;
    std::string inner_kind_;
};

} // namespace msx
