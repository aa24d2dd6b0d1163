#!/usr/bin/env python3
"""Emit tests/fixtures/policy_matrix.json: expected outcomes for every
(preset, op, sender, status) combination, derived straight from the
authorization rules rather than from the C++ implementation.

Rules, in check order (the first failing check names the error):
  1. existence   pending tokens are invisible to everyone but the authority
  2. status      burned/locked/pending gates per op
  3. authorization   who may perform the op at all
  4. policy      what the contract's flags permit
"""

import json
import sys

PRESETS = {
    "trade_only": {"tradeable": True, "transferable": True,
                   "hidden_metadata": False, "cross_chain": False},
    "cross_chain": {"tradeable": True, "transferable": True,
                    "hidden_metadata": False, "cross_chain": True},
    "hidden": {"tradeable": True, "transferable": True,
               "hidden_metadata": True, "cross_chain": False},
    "zero_value": {"tradeable": False, "transferable": False,
                   "hidden_metadata": False, "cross_chain": False},
}

OPS = ["trade", "transfer", "burn", "set_attribute", "lock"]
SENDERS = ["owner", "stranger", "authority"]
STATUSES = ["active", "locked", "burned", "pending"]


def expect(op, policy, sender, status):
    is_auth = sender == "authority"
    is_owner = sender == "owner"

    if op in ("trade", "transfer"):
        if status == "pending":
            return "wrong_status" if is_auth else "unknown_token"
        if status == "burned":
            return "token_burned"
        if status == "locked":
            return "token_locked"
        if not is_owner:
            return "not_owner"
        allowed = policy["tradeable"] if op == "trade" else policy["transferable"]
        return "ok" if allowed else "policy_violation"

    if op == "burn":
        if status == "pending":
            # Pending ids must stay invisible, but the authority is told the
            # truth: a pre-mint is withdrawn, never burned.
            return "wrong_status" if is_auth else "unknown_token"
        if status == "burned":
            return "already_burned"
        if is_auth:
            return "ok"  # revocation; ignores locks and policy
        if not is_owner:
            return "not_authorized"
        if status == "locked":
            return "token_locked"
        return "ok" if (policy["tradeable"] or policy["transferable"]) else "policy_violation"

    if op == "set_attribute":
        if status == "pending" and not is_auth:
            return "unknown_token"
        if status == "burned":
            return "token_burned"
        if status == "locked":
            return "token_locked"
        # The authority may still stage attributes on a pre-mint.
        return "ok" if is_auth else "not_authorized"

    if op == "lock":
        if status == "pending":
            return "wrong_status" if is_auth else "unknown_token"
        if status == "burned":
            return "token_burned"
        if status != "active":
            return "wrong_status"
        return "ok" if is_auth else "not_authorized"

    raise ValueError(op)


def main():
    cases = [
        {"preset": preset, "op": op, "sender": sender, "status": status,
         "expect": expect(op, policy, sender, status)}
        for preset, policy in PRESETS.items()
        for op in OPS
        for sender in SENDERS
        for status in STATUSES
    ]
    json.dump({"presets": PRESETS, "cases": cases}, sys.stdout,
              ensure_ascii=False, indent=1)
    sys.stdout.write("\n")


if __name__ == "__main__":
    main()
