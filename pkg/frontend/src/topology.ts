// The fixed ten-node network layout; nodes never change at runtime.

export const NODES = [
  "Supervisor",
  "Retriever",
  "Researcher",
  "Reasoner",
  "Memory",
  "Planner",
  "Controller",
  "Critic",
  "Communicator",
  "Debugger",
] as const;

export type NodeName = (typeof NODES)[number];

export const NODE_POSITIONS: Record<NodeName, { x: number; y: number }> = {
  Supervisor: { x: 400, y: 50 },
  Retriever: { x: 130, y: 160 },
  Researcher: { x: 310, y: 160 },
  Reasoner: { x: 490, y: 160 },
  Memory: { x: 670, y: 160 },
  Planner: { x: 130, y: 280 },
  Controller: { x: 310, y: 280 },
  Critic: { x: 490, y: 280 },
  Communicator: { x: 670, y: 280 },
  Debugger: { x: 310, y: 390 },
};

// Static edges of the network: supervisor fan-out, support agents feeding
// the planner, the plan/execute/critique pipeline, the memory loop, and
// the controller's debugging detour.
export const EDGES: [NodeName, NodeName][] = [
  ["Supervisor", "Retriever"],
  ["Supervisor", "Researcher"],
  ["Supervisor", "Reasoner"],
  ["Supervisor", "Memory"],
  ["Supervisor", "Planner"],
  ["Retriever", "Planner"],
  ["Researcher", "Planner"],
  ["Reasoner", "Planner"],
  ["Planner", "Controller"],
  ["Controller", "Critic"],
  ["Critic", "Controller"],
  ["Critic", "Memory"],
  ["Memory", "Communicator"],
  ["Memory", "Supervisor"],
  ["Controller", "Debugger"],
  ["Debugger", "Controller"],
];

export function isNodeName(name: string): name is NodeName {
  return (NODES as readonly string[]).includes(name);
}

// Transitions actually taken, in visit order: one edge per consecutive
// pair of invocations.
export function visitedEdges(path: string[]): [string, string][] {
  const edges: [string, string][] = [];
  for (let i = 0; i + 1 < path.length; i++) {
    edges.push([path[i], path[i + 1]]);
  }
  return edges;
}
