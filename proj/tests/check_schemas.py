"""Validates every catalog under data/ and tests/fixtures/ against docs/schema.

Fixtures the engine rejects at schema level must be rejected here too.
"""

import json
import pathlib
import sys

import jsonschema
import yaml

ROOT = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path(__file__).resolve().parents[1]
EXPECT_INVALID = {("factor-out-of-range", "threats")}


def main() -> int:
    validators = {}
    for name in ("model", "threats", "controls"):
        schema = json.loads((ROOT / "docs" / "schema" / f"{name}.schema.json").read_text())
        jsonschema.Draft202012Validator.check_schema(schema)
        validators[name] = jsonschema.Draft202012Validator(schema)

    dirs = [ROOT / "data" / "rag-enterprise"] + sorted(p for p in (ROOT / "tests" / "fixtures").iterdir() if p.is_dir())
    failures = 0
    for d in dirs:
        for name, validator in validators.items():
            for ext in ("yaml", "json"):
                path = d / f"{name}.{ext}"
                if not path.exists():
                    continue
                # json is a subset of yaml 1.2 for these documents
                doc = yaml.safe_load(path.read_text())
                errors = list(validator.iter_errors(doc))
                expect_invalid = (d.name, name) in EXPECT_INVALID
                if bool(errors) != expect_invalid:
                    failures += 1
                    detail = errors[0].message if errors else "accepted"
                    print(f"FAIL {path.relative_to(ROOT)}: {detail}")
                else:
                    print(f"ok   {path.relative_to(ROOT)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
