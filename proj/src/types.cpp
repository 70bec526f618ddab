// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/types.hpp"

#include <stdexcept>

namespace brblab {

const char* to_string(MsgKind k)
{
    switch (k)
    {
    case MsgKind::Propose:
        return "propose";
    case MsgKind::Ack:
        return "ack";
    case MsgKind::Vote1:
        return "vote1";
    case MsgKind::Vote2:
        return "vote2";
    case MsgKind::SubjectVote:
        return "subject_vote";
    case MsgKind::Echo:
        return "echo";
    case MsgKind::Vote:
        return "vote";
    }
    return "?";
}

MsgKind parse_msg_kind(const std::string& s)
{
    if (s == "propose")
        return MsgKind::Propose;
    if (s == "ack")
        return MsgKind::Ack;
    if (s == "vote1")
        return MsgKind::Vote1;
    if (s == "vote2")
        return MsgKind::Vote2;
    if (s == "subject_vote")
        return MsgKind::SubjectVote;
    if (s == "echo")
        return MsgKind::Echo;
    if (s == "vote")
        return MsgKind::Vote;
    throw std::invalid_argument("unknown message kind: '" + s + "'");
}

} // namespace brblab
