"""JSON Schemas (draft 2020-12) for the documents the CLI writes."""

_NUM = {"type": ["number", "null"]}
_COMPLEX = {
    "type": "object",
    "required": ["re", "im"],
    "properties": {"re": _NUM, "im": _NUM},
}
_AMPLITUDE = {
    "type": "object",
    "required": ["re", "im", "modulus", "phase"],
    "properties": {"re": _NUM, "im": _NUM, "modulus": _NUM, "phase": _NUM, "photons": {"type": "string"}},
}

SWEEP = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "rindler-dicke sweep",
    "type": "object",
    "required": ["command", "metadata", "header", "rows"],
    "properties": {
        "command": {"const": "sweep"},
        "metadata": {
            "type": "object",
            "required": ["version", "backend", "mode", "variable", "start", "stop", "points", "outputs", "fixed"],
            "properties": {
                "mode": {"enum": ["si", "dimensionless"]},
                "variable": {"enum": ["d", "a", "omega", "nu", "kd", "xi", "kappa"]},
                "points": {"type": "integer", "minimum": 2},
                "outputs": {"type": "array", "items": {"type": "string"}},
                "fixed": {"type": "object"},
                "timestamp": {"type": "string"},
            },
        },
        "header": {"type": "array", "items": {"type": "string"}, "minItems": 2},
        "rows": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["error"],
                "properties": {
                    "error": {"type": "string"},
                    "valid": {"type": "boolean"},
                    "P_s": {"type": ["number", "null"], "minimum": 0},
                    "P_a": {"type": ["number", "null"], "minimum": 0},
                    "P_single": {"type": ["number", "null"], "minimum": 0},
                    "P_e1e2": _NUM,
                    "alpha_plus": _COMPLEX,
                    "alpha_minus": _COMPLEX,
                    "beta_LL": _COMPLEX,
                    "beta_RR": _COMPLEX,
                    "beta_RL": _COMPLEX,
                    "beta_LR": _COMPLEX,
                },
            },
        },
    },
}

EVAL = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "rindler-dicke eval",
    "type": "object",
    "required": ["command", "version", "params", "dimensionless", "probabilities", "amplitudes", "dicke"],
    "properties": {
        "command": {"const": "eval"},
        "params": {"type": "object"},
        "dimensionless": {
            "type": "object",
            "required": ["xi", "kappa", "kd", "coupling"],
        },
        "probabilities": {
            "type": "object",
            "properties": {
                "P_s": {"type": "number", "minimum": 0},
                "P_a": {"type": "number", "minimum": 0},
                "P_single": {"type": "number", "minimum": 0},
                "P_e1e2": {
                    "type": "object",
                    "required": ["value", "valid", "bracket"],
                    "properties": {"value": {"type": "number"}, "valid": {"type": "boolean"}},
                },
                "P_e1e2_recombined": {"type": "number", "minimum": 0},
            },
        },
        "amplitudes": {
            "type": "object",
            "properties": {"phi_RL": {"type": "number"}},
            "additionalProperties": _AMPLITUDE,
        },
        "dicke": {"type": "object", "additionalProperties": _AMPLITUDE, "minProperties": 8},
    },
}

VERIFY = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "rindler-dicke verify",
    "type": "object",
    "required": ["command", "version", "passed", "checks", "negative_brackets", "notes"],
    "properties": {
        "command": {"const": "verify"},
        "passed": {"type": "boolean"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["name", "max_error", "tolerance", "passed", "seconds"],
                "properties": {
                    "name": {"type": "string"},
                    "max_error": _NUM,
                    "tolerance": {"type": "number"},
                    "passed": {"type": "boolean"},
                    "seconds": {"type": "number"},
                    "detail": {"type": "string"},
                },
            },
        },
        "negative_brackets": {"type": "array"},
        "notes": {"type": "array", "items": {"type": "string"}},
    },
}

BY_COMMAND = {"sweep": SWEEP, "eval": EVAL, "verify": VERIFY}
