"""Shared state between the acceptance tests and the terminal summary hook."""

# criterion number -> (description, passed)
ACCEPTANCE = {}
YES_AUDIT = {"reports": 0, "witnesses": 0}


def record(number, description, ok):
    ACCEPTANCE[number] = (description, bool(ok))
    return ok
