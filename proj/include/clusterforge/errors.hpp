#pragma once

#include <stdexcept>
#include <string>

namespace clusterforge {

// Base class for every domain error raised by the library.  `name()` is the
// stable identifier reported by the CLI and the JSON API.
class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what)
      : std::runtime_error(what), name_(std::move(name)) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

#define CLUSTERFORGE_DEFINE_ERROR(Type)                               \
  class Type : public Error {                                          \
   public:                                                             \
    explicit Type(const std::string& what) : Error(#Type, what) {}    \
  }

CLUSTERFORGE_DEFINE_ERROR(InvalidArgument);
CLUSTERFORGE_DEFINE_ERROR(VertexOutOfRange);
CLUSTERFORGE_DEFINE_ERROR(NotSkewSymmetrizable);
CLUSTERFORGE_DEFINE_ERROR(InvalidQuiver);
CLUSTERFORGE_DEFINE_ERROR(ParseError);
CLUSTERFORGE_DEFINE_ERROR(DivisionByZero);
CLUSTERFORGE_DEFINE_ERROR(NonLaurent);
CLUSTERFORGE_DEFINE_ERROR(SignIncoherence);
CLUSTERFORGE_DEFINE_ERROR(IncompatibleInput);
CLUSTERFORGE_DEFINE_ERROR(PoleAtOne);
CLUSTERFORGE_DEFINE_ERROR(PreconditionFailed);
CLUSTERFORGE_DEFINE_ERROR(NotApplicable);
CLUSTERFORGE_DEFINE_ERROR(UnknownArrow);
CLUSTERFORGE_DEFINE_ERROR(VertexOnTwoCycle);
CLUSTERFORGE_DEFINE_ERROR(LoopPresent);
CLUSTERFORGE_DEFINE_ERROR(DegenerateQuadraticPart);
CLUSTERFORGE_DEFINE_ERROR(TwoCycleAtVertex);

#undef CLUSTERFORGE_DEFINE_ERROR

}  // namespace clusterforge
