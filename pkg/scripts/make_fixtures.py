"""Regenerates the shipped scenario fixtures and scripts.

Run from the repository root: ``python3 scripts/make_fixtures.py``.
Builds src/agentctl/fixtures/{scenarios.json, fixtures.script, appendix
scripts, corpus} and prints the critic/recall similarities the fixtures
rely on so thresholds can be sanity-checked before freezing changes.
"""

import json
from pathlib import Path

from agentctl.auxtools.critique import cosine_similarity
from agentctl.auxtools.pdfdoc import render_pdf

FIX = Path("src/agentctl/fixtures")
FIX.mkdir(parents=True, exist_ok=True)
(FIX / "corpus").mkdir(exist_ok=True)


def react(thought, action=None, action_input=None, final=None):
    if final is not None:
        return f"Thought: {thought}\nFinal Answer: {final}"
    return f"Thought: {thought}\nAction: {action}\nAction Input: {action_input}"


def critic_step(query, answer):
    return react(
        "I should use the critic_tool to verify if the output aligns with the input query.",
        "critic_tool",
        f"'{query}' + '{answer}'",
    )


def memory_store_steps():
    return [
        react(
            "I should store this conversation in memory for future reference.",
            "storage_memory_tool",
            "<Conversation>",
        ),
        react("The memory has been updated.", final="The conversation has been stored in memory."),
    ]


def communicator_pdf(final_text):
    return [
        react(
            "I need to ask the user in the human_tool to identify the format of the output file they prefer.",
            "human_tool",
            "Please identify the format you prefer for the output file.",
        ),
        react(
            "The user prefers the output in pdf format. I will now convert the answer into a pdf file.",
            "text_to_pdf_tool",
            "<Conversation>",
        ),
        react("The PDF has been created successfully.", final=final_text),
    ]


def communicator_text(final_text):
    return [
        react(
            "No specific output format was requested, so I will present the answer directly.",
            final=final_text,
        )
    ]


class Script:
    def __init__(self):
        self.queries = {}
        self.sections = []

    def add(self, qid, query, node_steps):
        self.queries[qid] = query
        for node, steps in node_steps.items():
            for i, text in enumerate(steps):
                self.sections.append((qid, node, i, text))

    def render(self):
        lines = ["# Scripted completions (query id / node / inner step)."]
        for qid, query in self.queries.items():
            lines.append(f"query {qid}: {query}")
        lines.append("")
        for qid, node, step, text in self.sections:
            lines.append(f"[{qid}/{node}/{step}]")
            lines.append(text)
            lines.append("")
        return "\n".join(lines)


# ---------------------------------------------------------------- 16 scenarios

scenarios = []
script = Script()
sims = []


def scenario(qid, category, query, plan, controller_steps, answer, matcher,
             delivery="text", debugger=False, critic_answer=None):
    critic_ans = critic_answer or answer
    sims.append((qid, cosine_similarity(query, f"{query} {critic_ans}")))
    nodes = {
        "Supervisor": ["Planner"],
        "Planner": [
            react(
                "I need to determine the control analysis or design objective from the given input.",
                "planner_tool",
                query,
            ),
            react(
                "The planner_tool has identified the objective and the ordered control tools needed.",
                final="The plan is ready; the Controller should execute the ordered tools.",
            ),
        ],
        "Controller": controller_steps + [
            react("I now know the final answer", final=answer)
        ],
        "Critic": [
            critic_step(query, f"{query} {critic_ans}"),
            react(
                "The output aligns with the input query.",
                final="The output is aligned with the input query.",
            ),
        ],
        "Memory": memory_store_steps(),
        "Communicator": communicator_pdf(answer) if delivery == "pdf" else communicator_text(answer),
    }
    script.add(qid, query, nodes)
    agent_sequence = ["Planner", "Controller"]
    if debugger:
        agent_sequence.append("Debugger")
    agent_sequence += ["Critic", "Memory", "Communicator"]
    scenarios.append(
        {
            "id": qid,
            "category": category,
            "query": query,
            "replies": ["pdf"] if delivery == "pdf" else [],
            "ground_truth": {
                "answer": {"kind": "substring", "value": matcher},
                "routes": ["Planner", "Memory"],
                "agent_sequence": agent_sequence,
                "plan": list(plan),
                "delivery": delivery,
                "critic_labels": [True],
            },
        }
    )


# -- System Representation

scenario(
    "sr-tf", "SystemRepresentation",
    "Create the transfer function representation of the system with num = [1, 3], den = [1, -2, -3].",
    ["tf"],
    [react(
        "I should create the Transfer Function system from the numerator and denominator coefficients.",
        "tf", "num = [1, 3], den = [1, -2, -3]",
    )],
    "The transfer function (s + 3)/(s^2 - 2 s - 3) has been created as sys [1].",
    "(s + 3)/(s^2 - 2 s - 3)",
    delivery="pdf",
)

scenario(
    "sr-ss", "SystemRepresentation",
    "Create a state-space representation for the system with A = [[0, 1], [-2, -3]], B = [[0], [1]], C = [[1, 0]], D = [[0]].",
    ["ss"],
    [react(
        "I should build the state-space system from the given matrices.",
        "ss", "A = [[0, 1], [-2, -3]], B = [[0], [1]], C = [[1, 0]], D = [[0]]",
    )],
    "The state-space system with A = [[0, 1], [-2, -3]], B = [[0], [1]] has been created as sys [1].",
    "state-space system",
)

scenario(
    "sr-tf2ss", "SystemRepresentation",
    "Convert the transfer function with num = [1, 3], den = [1, -2, -3] to state space form.",
    ["tf", "tf2ss"],
    [
        react(
            "I can convert the stored system directly to state space.",
            "tf2ss", "sys = sys [9]",
        ),
        react(
            "The handle was wrong; I must first create the transfer function system.",
            "tf", "num = [1, 3], den = [1, -2, -3]",
        ),
        react(
            "Now I convert the new system to state space form.",
            "tf2ss", "sys = sys [1]",
        ),
    ],
    "The state space form is A = [[2, 3], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]] (sys [2]).",
    "A = [[2, 3], [1, 0]]",
    delivery="pdf",
    debugger=True,
)

scenario(
    "sr-ss2tf", "SystemRepresentation",
    "Convert the state-space system A = [[-4.16, -3.16], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]] to transfer function form.",
    ["ss2tf"],
    [react(
        "I should convert the state-space matrices to a transfer function.",
        "ss2tf", "A = [[-4.16, -3.16], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]]",
    )],
    "The transfer function form is (s + 3)/(s^2 + 4.16 s + 3.16), stored as sys [1].",
    "4.16 s + 3.16",
)

# -- Control Analysis

scenario(
    "ca-stability", "ControlAnalysis",
    "Assess the stability of the system with transfer function num = [1, 7, 10], den = [1, 3, 4, 20].",
    ["tf", "stability"],
    [
        react(
            "First I create the transfer function system.",
            "tf", "num = [1, 7, 10], den = [1, 3, 4, 20]",
        ),
        react(
            "Now I check the pole locations for stability.",
            "stability", "sys = sys [1]",
        ),
    ],
    "The system is unstable: it has 2 poles in the right-half of the complex plane.",
    "unstable",
    delivery="pdf",
)

scenario(
    "ca-bode", "ControlAnalysis",
    "Plot the Bode plot for the system with num = [1], den = [1, 1].",
    ["tf", "bode"],
    [
        react("I create the transfer function first.", "tf", "num = [1], den = [1, 1]"),
        react("Now I compute the Bode plot data.", "bode", "sys = sys [1]"),
    ],
    "The Bode plot for num = [1], den = [1, 1] has been generated; the magnitude is -3 dB at 1 rad/s.",
    "Bode",
)

scenario(
    "ca-nyquist", "ControlAnalysis",
    "Generate the Nyquist plot for the system with num = [1, 3], den = [1, -2, -3].",
    ["tf", "nyquist"],
    [
        react(
            "I create the transfer function system first.",
            "tf", "num = [1, 3], den = [1, -2, -3]",
        ),
        react("Now I compute the Nyquist curve.", "nyquist", "sys = sys [1]"),
    ],
    "The Nyquist plot for the system num = [1, 3], den = [1, -2, -3] has been generated.",
    "Nyquist",
    delivery="pdf",
)

scenario(
    "ca-rlocus", "ControlAnalysis",
    "Draw the root locus plot for the open-loop system with num = [1], den = [1, 2, 0].",
    ["tf", "root_locus"],
    [
        react(
            "I can compute the root locus for the stored open loop.",
            "root_locus", "sys = sys [3]",
        ),
        react(
            "The handle was wrong; I need to create the open-loop system first.",
            "tf", "num = [1], den = [1, 2, 0]",
        ),
        react("Now I compute the root locus branches.", "root_locus", "sys = sys [1]"),
    ],
    "The root locus plot for num = [1], den = [1, 2, 0] has been generated; the branches meet at -1.",
    "root locus",
    debugger=True,
)

# -- Controller Design

scenario(
    "cd-acker", "ControllerDesign",
    "Use Ackermann's formula to place the poles of a system with A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4].",
    ["acker"],
    [
        react(
            "I should use Ackermann's formula to place the poles of the system.",
            "acker", "A = [[0, 1], [-2, -3]], B = [[0, 1]], poles = [-3, -4]",
        ),
        react(
            "B must be a column vector; I will fix its shape and retry.",
            "acker", "A = [[0, 1], [-2, -3]], B = [[0], [1]], poles = [-3, -4]",
        ),
    ],
    "The gain matrix K to achieve the desired pole locations is [[10, 4]].",
    "[[10, 4]]",
    delivery="pdf",
    debugger=True,
    critic_answer="Ackermann's formula places the poles of the system with A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4]; the gain matrix K is [[10, 4]].",
)

scenario(
    "cd-place", "ControllerDesign",
    "Place the poles of a system with A = [[0, 1], [0, 0]], B = [[0], [1]] at [-1, -1].",
    ["place"],
    [react(
        "I should place the poles of the double integrator at the desired locations.",
        "place", "A = [[0, 1], [0, 0]], B = [[0], [1]], poles = [-1, -1]",
    )],
    "The gain matrix K to place the poles of the system at [-1, -1] is [[1, 2]].",
    "[[1, 2]]",
)

scenario(
    "cd-lqr", "ControllerDesign",
    "Design an LQR controller for the system with A = [[2, 3], [1, 0]], B = [[1], [0]], Q = [[1, 0], [0, 1]], R = [[1]].",
    ["lqr"],
    [react(
        "I should use the LQR design tool on the given state-space matrices.",
        "lqr", "A = [[2, 3], [1, 0]], B = [[1], [0]], Q = [[1, 0], [0, 1]], R = [[1]]",
    )],
    "The LQR controller for the system with A = [[2, 3], [1, 0]], B = [[1], [0]] has gain array([[6.16, 6.16]]).",
    "6.16",
    delivery="pdf",
)

scenario(
    "cd-feedback", "ControllerDesign",
    "Compute the closed-loop transfer function of the unity negative feedback loop with forward path num = [4], den = [1, 0].",
    ["tf", "feedback"],
    [
        react("I create the forward-path transfer function.", "tf", "num = [4], den = [1, 0]"),
        react("Now I close the unity negative feedback loop.", "feedback", "sys1 = sys [1]"),
    ],
    "The closed-loop transfer function of the unity negative feedback loop is 4/(s + 4).",
    "4/(s + 4)",
)

# -- Time-domain Simulation

scenario(
    "td-step", "TimeDomainSimulation",
    "Plot the step response for the system with transfer function num = [1, 3], den = [1, 4.16, 3.16].",
    ["tf", "step_response"],
    [
        react(
            "I should start by creating a Transfer Function system from the given coefficients.",
            "tf", "num = [1, 3], den = [1, 4.16, 3.16]",
        ),
        react("Now I plot the step response.", "step_response", "sys = sys [1]"),
    ],
    "The step response for the system with transfer function num = [1, 3], den = [1, 4.16, 3.16] settles near the DC gain 0.9494.",
    "0.9494",
    delivery="pdf",
)

scenario(
    "td-impulse", "TimeDomainSimulation",
    "Plot the impulse response of the system with num = [1], den = [1, 1].",
    ["tf", "impulse_response"],
    [
        react(
            "I can simulate the impulse response of the stored system.",
            "impulse_response", "sys = sys [4]",
        ),
        react(
            "The handle was wrong; I need to create the system first.",
            "tf", "num = [1], den = [1, 1]",
        ),
        react("Now I simulate the impulse response.", "impulse_response", "sys = sys [1]"),
    ],
    "The impulse response of num = [1], den = [1, 1] decays exponentially; y(1) is about 0.37.",
    "0.37",
    debugger=True,
)

scenario(
    "td-forced", "TimeDomainSimulation",
    "Simulate the forced response of the system with num = [1], den = [1, 1] to a constant unit input held over five samples.",
    ["tf", "forced_response"],
    [
        react("I create the transfer function system first.", "tf", "num = [1], den = [1, 1]"),
        react(
            "Now I simulate the forced response with the given input samples.",
            "forced_response", "sys = sys [1], u = [1, 1, 1, 1, 1], horizon = 2, n_points = 5",
        ),
    ],
    "The forced response of the system num = [1], den = [1, 1] to the constant unit input has been simulated.",
    "forced response",
    delivery="pdf",
)

scenario(
    "td-unstable-step", "TimeDomainSimulation",
    "Plot the step response of the plant with num = [1, 7, 10], den = [1, 3, 4, 20] to assess the system's stability.",
    ["tf", "step_response"],
    [
        react(
            "I create the plant transfer function first.",
            "tf", "num = [1, 7, 10], den = [1, 3, 4, 20]",
        ),
        react("Now I simulate the step response.", "step_response", "sys = sys [1]"),
    ],
    "The step response of the plant with num = [1, 7, 10], den = [1, 3, 4, 20] diverges, so the plant is unstable.",
    "unstable",
)

(FIX / "scenarios.json").write_text(
    json.dumps(
        {"script": "fixtures.script", "corpus": "corpus", "scenarios": scenarios},
        indent=2,
    )
    + "\n",
    encoding="utf-8",
)
(FIX / "fixtures.script").write_text(script.render(), encoding="utf-8")

print("16-scenario critic sims (need >= 0.5):")
for qid, sim in sims:
    flag = "OK " if sim >= 0.55 else "LOW"
    print(f"  {flag} {qid}: {sim:.3f}")


# ---------------------------------------------------------------- Appendix C

Q1 = "Retrieve the Transfer Function of the system from the provided document, Sys_Control.pdf. Then, plot its step response to assess the system's stability."
Q1_ANSWER = "The step response of the system G(s) = (s + 3)/(s^2 - 2 s - 3) from Sys_Control.pdf diverges, so the system is unstable."
Q2 = "Design an LQR controller for the mentioned system with Q = [[1, 0], [0, 1]], R = [[1]]."
Q2_ANSWER = "The LQR gain for the system is array([[6.16, 6.16]]) with closed-loop eigenvalues array([-3.16, -1])."
Q3 = "Use reasoning and apply the feedback gain K = [[6.16, 6.16]] to the state-space system A = [[2, 3], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]]. Then, plot the step response for the closed-loop system."
Q3_ANSWER = "The step response for the closed-loop system with transfer function num = [1, 3], den = [1, 4.16, 3.16] has been plotted; it settles near the DC gain 0.95."
Q4 = "Plot the step response for a system with transfer function num = [1, 3], den = [1, 4.16, 3.16]."
Q4_ANSWER = "The step response plot for the system with transfer function num = [1, 3], den = [1, 4.16, 3.16] has been recalled from memory and regenerated successfully."

COT_PATH = """Path:
1. Calculate the closed-loop system matrices using the formula: A_cl = A - BK
2. Substitute the given values: A = [[2, 3], [1, 0]], B = [[1], [0]], K = [[6.16, 6.16]]
3. Calculate the product BK: BK = [[1 * 6.16, 1 * 6.16], [0 * 6.16, 0 * 6.16]] = [[6.16, 6.16], [0.0, 0.0]]
4. Subtract BK from A: A_cl = [[2 - 6.16, 3 - 6.16], [1 - 0, 0 - 0]] = [[-4.16, -3.16], [1, 0]]
Therefore, the closed-loop system matrix A_cl is [[-4.16, -3.16], [1, 0]]. This reasoning path applies the feedback gain K to the state-space system to calculate the closed-loop system matrix."""

golden = Script()

golden.add("q1", Q1, {
    "Supervisor": ["Retriever"],
    "Retriever": [
        react(
            "I need to extract the Transfer Function of the system from the document first. Let's use the retriever_tool to retrieve this information.",
            "retriever_tool", "Transfer function of the system from Sys_Control.pdf",
        ),
        react(
            "I found the transfer function of the system in the document.",
            final="Transfer function: G(s) = (s + 3)/(s^2 - 2 s - 3), i.e. num = [1, 3], den = [1, -2, -3].",
        ),
    ],
    "Planner": [
        react(
            "I need to determine the control analysis or design objective from the given input.",
            "planner_tool",
            "Plot the step response to assess the system's stability for the system with num = [1, 3], den = [1, -2, -3]",
        ),
        react("The plan is ready.", final="The Controller should create the transfer function and plot its step response."),
    ],
    "Controller": [
        react(
            "I need the Transfer Function (TF) representation of the system and the goal is to compute the step response.",
            "tf", "num = [1, 3], den = [1, -2, -3]",
        ),
        react(
            "tf tool has successfully created the Transfer Function system.",
            "step_response", "sys = sys [1]",
        ),
        react("I now know the final answer", final=Q1_ANSWER),
    ],
    "Critic": [
        critic_step(Q1, f"{Q1} {Q1_ANSWER}"),
        react("The output aligns.", final="The output is aligned with the input query."),
    ],
    "Memory": memory_store_steps(),
    "Communicator": communicator_pdf(Q1_ANSWER + " The answer has been delivered as a PDF."),
})

golden.add("q2", Q2, {
    "Supervisor": ["Planner"],
    "Planner": [
        react(
            "I need to determine the control analysis or design objective from the given input.",
            "planner_tool",
            "Design an LQR controller for the mentioned system with Q = [[1, 0], [0, 1]], R = [[1]], num = [1, 3], den = [1, -2, -3]",
        ),
        react("The plan is ready.", final="Create the transfer function, convert it to state space, then run the LQR design."),
    ],
    "Controller": [
        react(
            "I should use the LQR design tool to design a controller for the given system.",
            "tf", "num = [1, 3], den = [1, -2, -3]",
        ),
        react(
            "I have created a Transfer Function system based on the provided numerator and denominator coefficients. Now, I need to convert this Transfer Function system to a State Space representation.",
            "tf2ss", "sys = sys [2]",
        ),
        react(
            "I should use the LQR design tool to design a controller for the given state-space system.",
            "lqr", "A = [[2, 3], [1, 0]], B = [[1], [0]], Q = [[1, 0], [0, 1]], R = [[1]]",
        ),
        react("I now know the final answer", final=Q2_ANSWER),
    ],
    "Critic": [
        critic_step(Q2, f"{Q2} {Q2_ANSWER}"),
        react("The output aligns.", final="The output is aligned with the input query."),
    ],
    "Memory": memory_store_steps(),
    "Communicator": communicator_pdf(Q2_ANSWER + " The answer has been delivered as a PDF."),
})

golden.add("q3", Q3, {
    "Supervisor": ["Reasoner"],
    "Reasoner": [
        react(
            "This problem involves feedback gain K and state-space system matrices A, B, C, and D. It can be solved logically in clear, distinct steps, so I should use the Chain-of-Thought approach.",
            "cot_tool",
            "Apply the feedback gain K = [[6.16, 6.16]] to the state-space system A = [[2, 3], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]]",
        ),
        react(
            "The closed-loop matrix has been derived.",
            final="The closed-loop system matrix A_cl is [[-4.16, -3.16], [1, 0]] with B = [[1], [0]], C = [[1, 3]], D = [[0]].",
        ),
    ],
    "cot_tool": [COT_PATH],
    "Planner": [
        react(
            "I need to determine the control analysis or design objective to plan the steps efficiently.",
            "planner_tool",
            "The state-space system A = [[-4.16, -3.16], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]]; then plot the step response for the closed-loop system.",
        ),
        react("The plan is ready.", final="Convert the closed-loop state-space system to a transfer function and plot the step response."),
    ],
    "Controller": [
        react(
            "I need to first create a Transfer Function system and then plot the step response.",
            "ss2tf", "A = [[-4.16, -3.16], [1, 0]], B = [[1], [0]], C = [[1, 3]], D = [[0]]",
        ),
        react(
            "I developed a Transfer Function model from the given state-space representation. Now I need to plot the step response for this Transfer Function system.",
            "step_response", "sys = sys [4]",
        ),
        react("I now know the final answer", final=Q3_ANSWER),
    ],
    "Critic": [
        critic_step(Q3, f"{Q3} {Q3_ANSWER}"),
        react("The output aligns.", final="The output is aligned with the input query."),
    ],
    "Memory": memory_store_steps(),
    "Communicator": communicator_pdf(Q3_ANSWER + " The answer has been delivered as a PDF."),
})

golden.add("q4", Q4, {
    "Supervisor": ["Memory"],
    "Memory": [
        react(
            "I need to recall if there is any previous conversation related to step response plots for transfer functions.",
            "recall_memory_tool", Q4,
        ),
        react("The memory has been recalled successfully.", final=Q4_ANSWER),
    ],
    "Communicator": communicator_pdf(Q4_ANSWER + " The answer has been delivered as a PDF."),
})

(FIX / "appendix_c.script").write_text(golden.render(), encoding="utf-8")

# ---------------------------------------------------------------- Appendix B

B_QUERY = "Place the poles of a system with A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4]."
B3_QUERY = "Use Ackermann's formula to place the poles of a system with A = [[0, 1], [-2, -3]], B = [[0], [1]] at [-3, -4]."

b1 = Script()
b1_answer = "The poles of the given system with A = [[0, 1], [-2, -3]], B = [[0], [1]] are [-2, -1]."
b1.add("b1", B_QUERY, {
    "Supervisor": ["Planner"],
    "Planner": [
        react(
            "I need to determine the control analysis or design objective for placing the poles of this system. Let's use planner_tool to identify the appropriate objective.",
            "planner_tool",
            "query='system with A = [[0, 1], [-2, -3]], B = [[0], [1]], poles at [-3, -4]'",
        ),
        react(
            "The planner_tool has identified the objective as poles and provided the ordered control tools needed. Now I can determine the final answer based on this information.",
            final="The objective is to place the poles of the given system at [-1, -2]. The ordered tools are control.ss and control.poles.",
        ),
    ],
    "Controller": [
        react(
            "Following the plan, I should build the state-space system first.",
            "ss", "A = [[0, 1], [-2, -3]], B = [[0], [1]], C = [[1, 0]], D = [[0]]",
        ),
        react("Now I compute the poles per the plan.", "poles", "sys = sys [1]"),
        react("I now know the final answer", final=b1_answer),
    ],
    "Critic": [
        critic_step(B_QUERY, f"{B_QUERY} {b1_answer}"),
        react("The output aligns.", final="The output is aligned with the input query."),
    ],
    "Memory": memory_store_steps(),
    "Communicator": communicator_text(b1_answer),
})
(FIX / "appendix_b1.script").write_text(b1.render(), encoding="utf-8")

b2 = Script()
b2_answer = "The system has been converted to state-space form as sys [1]."
b2.add("b2", B_QUERY, {
    "Supervisor": ["Planner"],
    "Planner": [
        react(
            "I need to determine the control objective from the given question and plan the steps accordingly.",
            "planner_tool", B_QUERY,
        ),
        react(
            "The control objective is to place the poles of a state-space system. The ordered tool is 'control.place'.",
            final="The control objective is to place the poles of a state-space system. The ordered tool is 'control.place'.",
        ),
    ],
    "Controller": [
        react(
            "I should first convert the system to State Space form using the 'ss' tool, then use the 'place' tool to place the poles at the desired locations.",
            "ss", "A = [[0, 1], [-2, -3]], B = [[0], [1]], C = [[1, 0]], D = [[0]]",
        ),
        react("I now know the final answer", final=b2_answer),
    ],
    "Critic": [
        critic_step(B_QUERY, f"{B_QUERY} {b2_answer}"),
        react("The output aligns.", final="The output is aligned with the input query."),
    ],
    "Memory": memory_store_steps(),
    "Communicator": communicator_text(b2_answer),
})
(FIX / "appendix_b2.script").write_text(b2.render(), encoding="utf-8")

b3 = Script()
b3_answer = "The gain matrix K to achieve the desired pole locations is [[10, 4]]."
b3.add("b3", B3_QUERY, {
    "Supervisor": ["Planner"],
    "Planner": [
        react(
            "I should use the planner tool to determine the appropriate control analysis tool for this question.",
            "planner_tool", B3_QUERY,
        ),
        react("The plan is ready.", final="Use Ackermann's formula via the acker tool."),
    ],
    "Controller": [
        react(
            "I should use Ackermann's formula to place the poles of the system.",
            "acker", "A = [[0, 1], [-2, -3]], B = [[0], [1]], poles = [-3, -4]",
        ),
        react(
            "I have used Ackermann's formula to place the poles of the system at the desired locations.",
            final=b3_answer,
        ),
    ],
    "Critic": [
        react(
            "The output result should be confirming that the gain matrix K achieves the desired pole locations based on the given input query.",
            "critic_tool",
            f"'{B3_QUERY}' + 'The gain matrix K to achieve the desired pole locations is [[10, 4]]'",
        ),
        react(
            "The output result needs to be revised to align better with the input query.",
            final="The gain matrix K to achieve the desired pole locations should be revised to align with the input query.",
        ),
    ],
    "Memory": memory_store_steps(),
    "Communicator": communicator_text(b3_answer),
})
(FIX / "appendix_b3.script").write_text(b3.render(), encoding="utf-8")

# ---------------------------------------------------------------- corpus

sys_control_text = """System Control Reference

Plant model of the laboratory setup.

Transfer function: G(s) = (s + 3) / (s^2 - 2 s - 3)

Equivalently, the coefficient form is num = [1, 3], den = [1, -2, -3].
The plant has a zero at s = -3 and poles at s = 3 and s = -1."""

(FIX / "corpus" / "Sys_Control.pdf").write_bytes(render_pdf(sys_control_text))

(FIX / "corpus" / "Lab_Notes.txt").write_text(
    """Laboratory notes on frequency-domain margins.

Gain margin and phase margin are read off the Bode plot near the
crossover frequencies. Nyquist encirclements of the critical point
determine closed-loop stability for open-loop unstable plants.
""",
    encoding="utf-8",
)

print("appendix scripts + corpus written")
print("q4 recall sim vs q3 record:", cosine_similarity(Q4, f"{Q3} {Q3_ANSWER}"))
