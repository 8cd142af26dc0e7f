import json

import pytest
from hamcrest import assert_that, contains_string, equal_to, has_entries, has_length, is_

from rank2roots.cli.commands import cli
from rank2roots.cli.schemas import SchemeDocument, parse_batch_line, parse_sequence
from rank2roots.cli.service import SchemeService
from rank2roots.covering.models import CoveringKind
from rank2roots.main import run
from rank2roots.scheme.models import SchemeKind
from rank2roots.scheme.service import chain_from_spine, cycle_from_char_seq
from rank2roots.shared.exceptions import InputValidationError
from rank2roots.tests.givenpy import given, then, when
from rank2roots.tests.shared.utils import get_test_settings
from rank2roots.tests.steps.steps_core import prepare_cli_runner, prepare_file


class TestSchemas:
    def test_parse_sequence(self):
        assert_that(parse_sequence("5, 1,2,2"), equal_to([5, 1, 2, 2]))
        with pytest.raises(InputValidationError):
            parse_sequence("5,x")

    def test_batch_lines(self):
        assert_that(parse_batch_line("cycle 5,1,2,2").char_seq, equal_to([5, 1, 2, 2]))
        assert_that(parse_batch_line('{"kind": "chain", "spine": [1, 2, 1]}').spine, equal_to([1, 2, 1]))
        with pytest.raises(InputValidationError):
            parse_batch_line("ring 1,2")

    def test_document_needs_the_matching_array(self):
        with pytest.raises(ValueError):
            SchemeDocument(kind="cycle", spine=[1, 2])

    def test_document_to_scheme(self):
        scheme = SchemeDocument(kind="chain", spine=[1, 2, 1]).to_scheme()
        assert_that(scheme.kind, equal_to(SchemeKind.CHAIN))
        assert_that(SchemeDocument.from_scheme(scheme).spine, equal_to([1, 2, 1]))


def prepare_scheme_service(**overrides):
    def step(context):
        context.service = SchemeService(get_test_settings(**overrides))

    return step


class TestSchemeService:
    def test_load_scheme_needs_exactly_one_source(self):
        with given([prepare_scheme_service()]) as context:
            assert_that(context.service.load_scheme("1,1", None, None), equal_to(cycle_from_char_seq((1, 1))))
            with pytest.raises(InputValidationError):
                context.service.load_scheme("1,1", "1,2,1", None)

    def test_enumeration_limit_comes_from_settings(self):
        with given([prepare_scheme_service(ENUMERATE_MAX_LENGTH=8)]) as context:
            assert_that(context.service.enumerate_classes(6, bruteforce=False), has_length(3))
            with pytest.raises(InputValidationError):
                context.service.enumerate_classes(9, bruteforce=False)

    def test_batch_runs_in_process_with_one_worker(self, tmp_path):
        batch = "cycle 1,1\n\nchain 1,2,1\n"
        with given([prepare_scheme_service(), prepare_file(tmp_path, "batch.txt", batch)]) as context:
            with when("running the batch"):
                results = context.service.run_batch(context.path)

            with then("every non-empty line is decided in order"):
                assert_that(context.service.batch_workers, equal_to(1))
                assert_that([r["input"] for r in results], equal_to(["cycle 1,1", "chain 1,2,1"]))

    def test_build_covering(self):
        with given([prepare_scheme_service()]) as context:
            rel = context.service.build_covering(chain_from_spine((1, 2, 1)), None, True, False)
            assert_that(rel.kind, equal_to(CoveringKind.CHAIN_DOUBLE))
            rel = context.service.build_covering(cycle_from_char_seq((1, 1)), None, False, True)
            assert_that(rel.fold, equal_to(3))
            with pytest.raises(InputValidationError):
                context.service.build_covering(cycle_from_char_seq((1, 1)), None, False, False)

    def test_census_uses_the_configured_budget(self):
        with given([prepare_scheme_service(BFS_CAP_PER_OBJECT=2)]) as context:
            decision, report = context.service.census(cycle_from_char_seq((1, 1)))
            assert_that(decision.finite, is_(True))
            assert_that(report.cap, equal_to(5))
            assert_that(report.budget_exceeded, is_(True))


class TestDecideCommand:
    def test_text_output(self):
        with given([prepare_cli_runner()]) as context:
            with when("deciding a cycle with a trace"):
                result = context.runner.invoke(cli, ["decide", "--cycle", "5,1,2,2", "--trace"])

            with then("the verdict, invariants and reduction are printed"):
                assert_that(result.exit_code, equal_to(0))
                assert_that(result.output, contains_string("cycle(5,1,2,2): finite"))
                assert_that(result.output, contains_string("h=6 q=20 positive_roots=12 m=6"))
                assert_that(result.output, contains_string("(5,1,2,2)^2 -> (4,1,2)^2 -> (3,1)^2"))

    def test_trace_shows_the_doubled_cycle(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["decide", "--cycle", "5,1,2,3", "--trace"])
            assert_that(result.exit_code, equal_to(0))
            assert_that(result.output, contains_string("non_cs_double: (5,1,2,3) -> (5,1,2,3,5,1,2,3)"))

    def test_json_output(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["decide", "--chain", "1,2,1", "--json"])
            payload = json.loads(result.output)
            assert_that(result.exit_code, equal_to(0))
            assert_that(payload, has_entries(verdict="finite", finite=True, irreducible=True))
            assert_that(payload["scheme"], equal_to({"kind": "chain", "spine": [1, 2, 1]}))
            assert_that(payload["certificate"][0]["step"], equal_to("chain_to_cycle"))

    def test_strict_mode_fails_on_a_negative_verdict(self):
        with given([prepare_cli_runner()]) as context:
            assert_that(context.runner.invoke(cli, ["decide", "--cycle", "2,2"]).exit_code, equal_to(0))
            result = context.runner.invoke(cli, ["decide", "--cycle", "2,2", "--strict"])
            assert_that(result.exit_code, equal_to(1))
            assert_that(result.output, contains_string("not finite"))

    def test_missing_scheme_is_a_usage_error(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["decide"])
            assert_that(result.exit_code, equal_to(2))
            assert_that(result.output, contains_string("VALIDATION_ERROR"))

    def test_odd_cycle_is_rejected(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["decide", "--cycle", "1,2,3", "--json"])
            assert_that(result.exit_code, equal_to(2))

    def test_batch(self, tmp_path):
        content = "cycle 5,1,2,2\nchain 1,2,1\n\n" + '{"kind": "cycle", "char_seq": [2, 2]}\n'
        with given([prepare_cli_runner(), prepare_file(tmp_path, "batch.txt", content)]) as context:
            with when("deciding every line"):
                result = context.runner.invoke(cli, ["decide", "--batch", context.path, "--json"])

            with then("results come back in input order"):
                payload = json.loads(result.output)
                assert_that(result.exit_code, equal_to(0))
                assert_that(payload["results"], has_length(3))
                verdicts = [r["decision"]["verdict"] for r in payload["results"]]
                assert_that(verdicts, equal_to(["finite", "finite", "not finite"]))

    def test_batch_with_a_bad_line(self, tmp_path):
        with given([prepare_cli_runner(), prepare_file(tmp_path, "batch.txt", "cycle 1,1\ncycle 1,2,3\n")]) as context:
            result = context.runner.invoke(cli, ["decide", "--batch", context.path])
            assert_that(result.exit_code, equal_to(2))
            assert_that(result.output, contains_string("cycle 1,1: finite"))
            assert_that(result.output, contains_string("cycle 1,2,3: error [VALIDATION_ERROR]"))

    def test_verify_certificate(self, tmp_path):
        with given([prepare_cli_runner()]) as context:
            with when("a stored decision is replayed"):
                stored = context.runner.invoke(cli, ["decide", "--cycle", "5,1,2,2", "--json"]).output
                path = tmp_path / "decision.json"
                path.write_text(stored)
                result = context.runner.invoke(cli, ["decide", "--verify-cert", str(path)])

            with then("the certificate is accepted"):
                assert_that(result.exit_code, equal_to(0))
                assert_that(result.output, contains_string("certificate valid"))

    def test_verify_certificate_rejects_a_forgery(self, tmp_path):
        with given([prepare_cli_runner()]) as context:
            stored = json.loads(context.runner.invoke(cli, ["decide", "--cycle", "5,1,2,3", "--json"]).output)
            stored["finite"] = True
            path = tmp_path / "decision.json"
            path.write_text(json.dumps(stored))
            result = context.runner.invoke(cli, ["decide", "--verify-cert", str(path)])
            assert_that(result.exit_code, equal_to(1))
            assert_that(result.output, contains_string("CERTIFICATE_ERROR"))


class TestOtherCommands:
    def test_enumerate(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["enumerate", "--length", "6"])
            assert_that(result.exit_code, equal_to(0))
            assert_that(result.output.split(), equal_to(["(1,2,2,2,1,4)", "(1,2,3,1,2,3)", "(1,3,1,3,1,3)"]))

    def test_enumerate_json_and_bruteforce_agree(self):
        with given([prepare_cli_runner()]) as context:
            fast = json.loads(context.runner.invoke(cli, ["enumerate", "--length", "7", "--json"]).output)
            slow_args = ["enumerate", "--length", "7", "--bruteforce", "--json"]
            slow = json.loads(context.runner.invoke(cli, slow_args).output)
            assert_that(fast["count"], equal_to(4))
            assert_that(fast, equal_to(slow))

    def test_enumerate_length_limit(self):
        with given([prepare_cli_runner()]) as context:
            assert_that(context.runner.invoke(cli, ["enumerate", "--length", "25"]).exit_code, equal_to(2))

    def test_roots_from_a_plus_sequence(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["roots", "--aplus", "1,2,1,2"])
            assert_that(result.exit_code, equal_to(0))
            assert_that(result.output, contains_string("8 objects, 4 positive roots each"))

    def test_roots_of_a_chain(self):
        with given([prepare_cli_runner()]) as context:
            payload = json.loads(context.runner.invoke(cli, ["roots", "--chain", "1,3", "--json"]).output)
            assert_that(payload["positive_root_count"], equal_to(6))
            assert_that(payload["axioms_valid"], is_(True))

    def test_roots_without_a_finite_system(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["roots", "--cycle", "2,2"])
            assert_that(result.exit_code, equal_to(1))
            assert_that(result.output, contains_string("NO_FINITE_ROOT_SYSTEM"))

    def test_universal_cover(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["cover", "--cycle", "1,1", "--universal"])
            assert_that(result.exit_code, equal_to(0))
            expected = "universal covering of degree 3: cycle(1,1,1,1,1,1) -> cycle(1,1)"
            assert_that(result.output, contains_string(expected))

    def test_cover_modes_are_exclusive(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["cover", "--cycle", "1,1", "--universal", "--k", "2"])
            assert_that(result.exit_code, equal_to(2))

    def test_detect_quotients(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["cover", "--cycle", "1,2,1,2", "--detect-quotients"])
            assert_that(result.output, contains_string("spine (1,2,1)"))
            assert_that(result.output, contains_string("half quotient: cycle(1,2)"))

    def test_validate(self, tmp_path):
        document = json.dumps({"kind": "cycle", "char_seq": [-1, 2]})
        with given([prepare_cli_runner(), prepare_file(tmp_path, "scheme.json", document)]) as context:
            assert_that(context.runner.invoke(cli, ["validate", "--cycle", "5,1,2,2"]).exit_code, equal_to(0))
            result = context.runner.invoke(cli, ["validate", "--input", context.path])
            assert_that(result.exit_code, equal_to(2))
            assert_that(result.output, contains_string("violation (M1) at a0"))

    def test_extremal(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["extremal", "--n", "2"])
            assert_that(result.exit_code, equal_to(0))
            assert_that(result.output, contains_string("cycle cycle(3,1,5,1): finite"))
            assert_that(result.output, contains_string("chain chain(3,1,5): finite"))

    def test_stats(self):
        with given([prepare_cli_runner()]) as context:
            result = context.runner.invoke(cli, ["stats", "--cycle", "1,1"])
            assert_that(result.exit_code, equal_to(0))
            assert_that(result.output, contains_string("|End(a0)|=3"))

    def test_stats_on_an_infinite_groupoid(self):
        with given([prepare_cli_runner()]) as context:
            payload = json.loads(context.runner.invoke(cli, ["stats", "--cycle", "2,2", "--json"]).output)
            assert_that(payload["stats"], is_(None))
            assert_that(payload["groupoid"]["budget_exceeded"], is_(True))


class TestEntryPoint:
    def test_exit_codes(self, capsys):
        assert_that(run(["decide", "--cycle", "1,1"]), equal_to(0))
        assert_that(run(["decide", "--cycle", "2,2", "--strict"]), equal_to(1))
        assert_that(run(["decide"]), equal_to(2))
        assert_that(run(["no-such-command"]), equal_to(2))
        assert_that(capsys.readouterr().out, contains_string("cycle(1,1): finite"))
