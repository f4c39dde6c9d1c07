"""Command-line front door: chat, ask, eval, plot, corpus, serve."""

from __future__ import annotations

import json
import shutil
import sys
from pathlib import Path

import click

from .auxtools.humanio import InteractiveChannel, ScriptedChannel
from .auxtools.memory import MemoryStore
from .auxtools.retrieval import ingest_corpus
from .backends import HttpBackend, ScriptedBackend
from .config import AgentConfig
from .errors import AgentError, RunAborted
from .graph import AgentGraph
from .harness import load_scenarios, render_report, run_all
from .plotting import render_payload_svg, write_payload_json
from .tracing import RunTrace


def _build_backend(backend: str, script: str | None):
    if backend == "scripted":
        return ScriptedBackend.from_file(script) if script else ScriptedBackend()
    return HttpBackend()


def _build_graph(backend, script, corpus, replies, out_dir, memory):
    corpus_index = ingest_corpus([corpus]) if corpus else None
    if replies:
        channel = ScriptedChannel(list(replies))
    else:
        channel = InteractiveChannel() if sys.stdin.isatty() else ScriptedChannel([])
    return AgentGraph(
        _build_backend(backend, script),
        AgentConfig(),
        memory_store=MemoryStore(memory),
        corpus_index=corpus_index,
        reply_channel=channel,
        output_dir=out_dir,
    )


_COMMON = [
    click.option("--backend", type=click.Choice(["scripted", "http"]), default="scripted",
                 show_default=True, help="Completion backend."),
    click.option("--script", type=click.Path(exists=True, dir_okay=False), default=None,
                 help="Script file for the scripted backend."),
    click.option("--corpus", type=click.Path(exists=True), default=None,
                 help="Corpus file or directory for the Retriever."),
    click.option("--out-dir", type=click.Path(file_okay=False), default=".",
                 show_default=True, help="Directory for delivered documents."),
    click.option("--memory", type=click.Path(dir_okay=False), default=None,
                 help="Memory log file (persistent recall across runs)."),
]


def _with_common(fn):
    for option in reversed(_COMMON):
        fn = option(fn)
    return fn


@click.group()
def main():
    """Multi-agent control-engineering assistant."""


@main.command()
@click.argument("query")
@_with_common
@click.option("--reply", multiple=True, help="Scripted reply for questions the system asks.")
@click.option("--trace", "trace_out", type=click.Path(dir_okay=False), default=None,
              help="Write the run trace (JSONL) to this file.")
def ask(query, backend, script, corpus, out_dir, memory, reply, trace_out):
    """Run one query through the agent network and print the answer."""
    graph = _build_graph(backend, script, corpus, reply, out_dir, memory)
    try:
        answer, trace = graph.run_conversation(query)
    except RunAborted as exc:
        trace = exc.trace
        answer = f"[aborted: {exc}]"
    except AgentError as exc:
        raise click.ClickException(str(exc)) from exc
    if trace_out and trace is not None:
        Path(trace_out).write_text(trace.to_jsonl(), encoding="utf-8")
    click.echo(answer)


@main.command()
@_with_common
def chat(backend, script, corpus, out_dir, memory):
    """Interactive REPL; type 'exit' to quit."""
    graph = _build_graph(backend, script, corpus, (), out_dir, memory)
    click.echo("agentctl chat (type 'exit' to quit)")
    while True:
        try:
            query = input("you> ").strip()
        except (EOFError, KeyboardInterrupt):
            break
        if not query:
            continue
        if query.lower() in ("exit", "quit"):
            break
        try:
            answer, _ = graph.run_conversation(query)
        except (AgentError, RunAborted) as exc:
            answer = f"[error: {exc}]"
        click.echo(f"agent> {answer}")


@main.command("eval")
@click.option("--scenarios", "scenarios_path", required=True,
              type=click.Path(exists=True, dir_okay=False), help="Scenario JSON file.")
@click.option("--runs", default=20, show_default=True, help="Repetitions per scenario.")
@click.option("--backend", type=click.Choice(["scripted", "http"]), default="scripted",
              show_default=True)
@click.option("--report", type=click.Choice(["text", "csv", "chartdata"]), default="text",
              show_default=True)
@click.option("--out", type=click.Path(dir_okay=False), default=None,
              help="Write the report here instead of stdout.")
def eval_command(scenarios_path, runs, backend, report, out):
    """Run the scenario evaluation and render the category report."""
    scenario_set = load_scenarios(scenarios_path)
    reports = run_all(scenario_set, runs, backend)
    artifact = render_report(reports, report)
    if out:
        Path(out).write_text(artifact, encoding="utf-8")
        click.echo(f"report written to {out}")
    else:
        click.echo(artifact)


@main.command()
@click.option("--trace", "trace_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Trace file (JSONL) produced by 'ask --trace'.")
@click.option("--out", required=True, type=click.Path(dir_okay=False),
              help="Output file; .svg renders a vector graphic, anything else JSON data.")
def plot(trace_path, out):
    """Export the last plot payload of a trace as data or vector graphic."""
    trace = RunTrace.from_jsonl(Path(trace_path).read_text(encoding="utf-8"))
    payloads = [e.payload["plot"] for e in trace.events if e.kind == "plot_payload"]
    if not payloads:
        raise click.ClickException("trace holds no plot payloads")
    payload = payloads[-1]
    if out.lower().endswith(".svg"):
        render_payload_svg(payload, out)
    else:
        write_payload_json(payload, out)
    click.echo(f"plot written to {out}")


@main.group()
def corpus():
    """Manage the retrieval corpus directory."""


@corpus.command("add")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.option("--corpus-dir", default="corpus", show_default=True,
              type=click.Path(file_okay=False))
def corpus_add(path, corpus_dir):
    """Copy a document into the corpus directory."""
    target = Path(corpus_dir)
    target.mkdir(parents=True, exist_ok=True)
    destination = target / Path(path).name
    shutil.copyfile(path, destination)
    index = ingest_corpus([target])
    click.echo(f"added {destination} ({len(index)} chunks indexed)")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
@click.option("--backend", type=click.Choice(["scripted", "http"]), default="scripted",
              show_default=True)
@click.option("--script", type=click.Path(exists=True, dir_okay=False), default=None)
@click.option("--corpus", type=click.Path(exists=True), default=None)
@click.option("--memory", type=click.Path(dir_okay=False), default=None)
@click.option("--out-dir", type=click.Path(file_okay=False), default=".", show_default=True)
def serve(host, port, backend, script, corpus, memory, out_dir):
    """Start the streaming HTTP service."""
    import uvicorn

    from .service import create_app

    corpus_index = ingest_corpus([corpus]) if corpus else None
    app = create_app(
        backend=_build_backend(backend, script),
        corpus_index=corpus_index,
        memory_path=memory,
        output_dir=out_dir,
    )
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
