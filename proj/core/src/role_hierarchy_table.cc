// Copyright 2026 The CDEE Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <initializer_list>

#include "cdee/resolve.h"

namespace cdee {
namespace {

struct Row {
  EventType type;
  int level;
  std::initializer_list<const char*> roles;
};

// Line-wrapped names in the source table are rejoined ("Campaign Team
// Member"), and two truncated ones are completed ("Audience Member",
// "Remote Participant").
const Row kRows[] = {
    {EventType::kAttack, 1, {"Attacker", "Victim", "Direct Target"}},
    {EventType::kAttack, 2, {"Eyewitness", "First Responder"}},
    {EventType::kAttack, 3, {"Emergency Service", "Investigator", "Intelligence Analyst"}},
    {EventType::kAttack, 4, {"Reporter", "Analyst", "Policy Maker"}},
    {EventType::kAttack, 5, {"Bystander", "Commentator", "Academic Researcher"}},

    {EventType::kSport, 1, {"Winner", "MVP", "Loser"}},
    {EventType::kSport, 2, {"Coach", "Referee", "Key Player"}},
    {EventType::kSport, 3, {"Participant", "Team Doctor", "Tactical Analyst"}},
    {EventType::kSport, 4, {"Sponsor", "Spectator", "Media"}},
    {EventType::kSport, 5, {"Security Personnel", "Event Organizer", "Volunteer"}},

    {EventType::kEventUnk, 1, {"Main Participants"}},
    {EventType::kEventUnk, 2, {"Directly Affected"}},
    {EventType::kEventUnk, 3, {"Recorders", "Witnesses"}},
    {EventType::kEventUnk, 4, {"Analysts", "Commentators"}},
    {EventType::kEventUnk, 5, {"Bystanders"}},

    {EventType::kElection, 1, {"Winning Candidate", "Losing Candidate", "Election Official"}},
    {EventType::kElection, 2, {"Voter", "Campaign Team Member", "Political Analyst"}},
    {EventType::kElection, 3, {"Observer", "Media", "Pollster"}},
    {EventType::kElection, 4, {"Supporter", "Opponent", "Independent Commentator"}},
    {EventType::kElection, 5, {"Security Personnel", "Election Equipment Supplier", "Legal Advisor"}},

    {EventType::kGeneral, 1, {"Organizer", "Keynote Speaker", "Sponsor"}},
    {EventType::kGeneral, 2, {"Participant", "Volunteer", "Service Provider"}},
    {EventType::kGeneral, 3, {"Media", "Security Personnel"}},
    {EventType::kGeneral, 4, {"Audience Member", "Commentator", "Industry Analyst"}},
    {EventType::kGeneral, 5, {"Remote Participant", "Social Media Influencer", "Academic Researcher"}},

    {EventType::kDisaster, 1, {"Victim", "Rescue Team", "Emergency Management Official"}},
    {EventType::kDisaster, 2, {"Medical Service Provider", "Volunteer", "Donor"}},
    {EventType::kDisaster, 3, {"Analyst", "Journalist", "International Aid Organization"}},
    {EventType::kDisaster, 4, {"Policy Maker"}},
    {EventType::kDisaster, 5, {"Observer", "Commentator"}},

    {EventType::kAccident, 1, {"Victim", "At-Fault Party"}},
    {EventType::kAccident, 2, {"Eyewitness", "First Responder"}},
    {EventType::kAccident, 3, {"Investigator", "Legal Advisor"}},
    {EventType::kAccident, 4, {"Media", "Analyst"}},
    {EventType::kAccident, 5, {"Bystander", "Commentator"}},

    {EventType::kAward, 1, {"Awardee", "Nominee", "Presenter"}},
    {EventType::kAward, 2, {"Organizer", "Judge", "Sponsor"}},
    {EventType::kAward, 3, {"Attendee", "Media", "Industry Analyst"}},
    {EventType::kAward, 4, {"Audience", "Commentator", "Social Media Influencer"}},
    {EventType::kAward, 5, {"Security Personnel", "Technical Support Staff", "Volunteer"}},

    {EventType::kOthers, 1, {"Main Participants"}},
    {EventType::kOthers, 2, {"Directly Affected"}},
    {EventType::kOthers, 3, {"Supporters", "Opponents"}},
    {EventType::kOthers, 4, {"Observers", "Recorders"}},
    {EventType::kOthers, 5, {"Analysts", "Commentators"}},
};

RoleHierarchy BuildDefault() {
  RoleHierarchy h;
  for (const Row& row : kRows) {
    for (const char* role : row.roles) h.Set(row.type, role, row.level);
  }
  return h;
}

}  // namespace

const RoleHierarchy& RoleHierarchy::Default() {
  static const RoleHierarchy kDefault = BuildDefault();
  return kDefault;
}

}  // namespace cdee
