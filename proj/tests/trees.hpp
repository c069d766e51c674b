#pragma once

// The running example: the tree of the paper's file-server scenario and its
// normal form.

#include "sandtree/term.hpp"

namespace sandtree::testing {

// OR(SAND(SAND(ftp_rhosts,rsh),local_bof), AND(ssh_bof,rsaref_bof))
inline Term fig1_tree() {
  Term ftp = Term::action("ftp_rhosts");
  Term rsh = Term::action("rsh");
  Term local = Term::action("local_bof");
  Term ssh = Term::action("ssh_bof");
  Term rsaref = Term::action("rsaref_bof");
  return Term::or_of(
      {Term::sand_of({Term::sand_of({ftp, rsh}), local}),
       Term::and_of({ssh, rsaref})});
}

// OR(SAND(ftp_rhosts,rsh,local_bof), AND(ssh_bof,rsaref_bof))
inline Term fig3_tree() {
  return Term::or_of(
      {Term::sand_of({Term::action("ftp_rhosts"), Term::action("rsh"),
                      Term::action("local_bof")}),
       Term::and_of({Term::action("ssh_bof"), Term::action("rsaref_bof")})});
}

}  // namespace sandtree::testing
