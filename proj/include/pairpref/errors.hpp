#pragma once

#include <stdexcept>
#include <string>

namespace pairpref {

enum class Errc {
    SyntaxError,
    UnknownAgent,
    NonEdgePreference,
    ConflictingPair,
    CyclicRelation,
    NotTies,
    ClassGateViolation,
    EdgeNotInInstance,
    MalformedMatching,
    EmptyList,
    ClauseArity,
    InfeasibleN,
    NotTwoTwoE3,
    SizeGuard,
    AssignmentNotSatisfying,
    MalformedStableMatching,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::SyntaxError: return "SyntaxError";
        case Errc::UnknownAgent: return "UnknownAgent";
        case Errc::NonEdgePreference: return "NonEdgePreference";
        case Errc::ConflictingPair: return "ConflictingPair";
        case Errc::CyclicRelation: return "CyclicRelation";
        case Errc::NotTies: return "NotTies";
        case Errc::ClassGateViolation: return "ClassGateViolation";
        case Errc::EdgeNotInInstance: return "EdgeNotInInstance";
        case Errc::MalformedMatching: return "MalformedMatching";
        case Errc::EmptyList: return "EmptyList";
        case Errc::ClauseArity: return "ClauseArity";
        case Errc::InfeasibleN: return "InfeasibleN";
        case Errc::NotTwoTwoE3: return "NotTwoTwoE3";
        case Errc::SizeGuard: return "SizeGuard";
        case Errc::AssignmentNotSatisfying: return "AssignmentNotSatisfying";
        case Errc::MalformedStableMatching: return "MalformedStableMatching";
    }
    return "UnknownError";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
    throw Error(code, message);
}

}  // namespace pairpref
