"""
K3,3 Saturation MCP Server - saturation checks, exact search and charge analysis over stdio
"""

import logging
import sys
from typing import Optional
from mcp.server import FastMCP
from mcp.server.fastmcp import Context
from src.tools import verify_tool, sat_tool, analyze_tool, table_tool, construct_tool
from src.core.config import validate_config, get_config, LOG_LEVEL, SEARCH_MAX_TIME
from dotenv import load_dotenv

load_dotenv()

# Logging configuration
logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    stream=sys.stderr,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)
logger = logging.getLogger(__name__)

# Validate configuration on startup
try:
    validate_config()
    logger.info("Configuration validated successfully")
except Exception as e:
    logger.error(f"Configuration validation failed: {e}")
    sys.exit(1)

mcp = FastMCP("sat-k33")


@mcp.tool(
    description="Decide whether a graph (graph6 or named construction) is saturated for a complete multipartite pattern",
    structured_output=True
)
async def verify_saturation(ctx: Context, g6: Optional[str] = None, construction: Optional[str] = None,
                            pattern: str = "3,3") -> str:
    """
    Check pattern-freeness and that every missing edge creates a copy.

    Args:
        ctx: MCP context for logging
        g6: Graph in graph6 format, e.g. "E^vg"
        construction: Named construction instead of g6, e.g. "gn:12", "small:9"
        pattern: Part sizes of the forbidden complete multipartite graph (default "3,3")

    Returns:
        JSON with the verdict, the copy found or the failing edge, and the certificate size
    """
    await ctx.info(f"Verifying {g6 or construction} against pattern {pattern}")
    return await verify_tool.verify_saturation(g6, construction, pattern)


@mcp.tool(
    description="Compute sat(n, pattern) by exhaustive isomorph-free search with a verified witness",
    structured_output=True
)
async def compute_sat(n: int, ctx: Context, pattern: str = "3,3", max_time: float = SEARCH_MAX_TIME,
                      upper_only: bool = False) -> str:
    """
    Exact saturation number within a time budget.

    Args:
        n: Number of vertices
        ctx: MCP context for logging
        pattern: Part sizes (default "3,3")
        max_time: Wall-clock budget in seconds
        upper_only: Skip the search and report the best construction or greedy bound

    Returns:
        JSON with status (Exact, UpperBoundOnly, BudgetExceeded), value and witness graph6
    """
    await ctx.info(f"Computing sat({n}, K_{pattern}) within {max_time:.0f}s")
    return await sat_tool.compute_sat_json(n, pattern, max_time, upper_only)


@mcp.tool(
    description="Confirm or refute a claimed saturation number with a witness and a search below it",
    structured_output=True
)
async def confirm_sat(n: int, claimed: int, ctx: Context, pattern: str = "3,3",
                      max_time: float = SEARCH_MAX_TIME) -> str:
    """
    Confirm sat(n, pattern) = claimed.

    Args:
        n: Number of vertices
        claimed: Claimed saturation number
        ctx: MCP context for logging
        pattern: Part sizes (default "3,3")
        max_time: Wall-clock budget in seconds

    Returns:
        JSON with status Confirmed, RefutedWithWitness, Unwitnessed or Inconclusive
    """
    await ctx.info(f"Confirming sat({n}, K_{pattern}) = {claimed}")
    return await sat_tool.confirm_sat_json(n, claimed, pattern, max_time)


@mcp.tool(
    description="Minimum-degree vertex partition, discharging charges, edge identities and structural audits",
    structured_output=True
)
async def analyze_partition(ctx: Context, g6: Optional[str] = None, construction: Optional[str] = None,
                            vertex: Optional[int] = None) -> str:
    """
    Analyze a graph around a minimum-degree vertex.

    Args:
        ctx: MCP context for logging
        g6: Graph in graph6 format
        construction: Named construction instead of g6
        vertex: Minimum-degree root vertex (default: tie-break choice)

    Returns:
        JSON with the partition classes, charge ledgers, identity checks and audit reports
    """
    await ctx.info(f"Analyzing {g6 or construction} (root: {vertex if vertex is not None else 'auto'})")
    return await analyze_tool.analyze_partition(g6, construction, vertex)


@mcp.tool(
    description="Table of known saturation numbers, bounds and the general multipartite upper bound",
    structured_output=True
)
async def formula_table(n_from: int, n_to: int, ctx: Context, pattern: str = "3,3") -> str:
    """
    Known values and bounds over a range of n.

    Args:
        n_from: First vertex count
        n_to: Last vertex count (inclusive)
        ctx: MCP context for logging
        pattern: Part sizes (default "3,3")

    Returns:
        JSON rows plus CSV and text renderings
    """
    await ctx.info(f"Building formula table for K_{pattern}, n = {n_from}..{n_to}")
    return await table_tool.formula_table_json(pattern, n_from, n_to)


@mcp.tool(
    description="Build a named extremal construction (gn:N, ehm:N,K, edge-join-cycle:N, small:N)",
    structured_output=True
)
async def build_construction(name: str, ctx: Context, verify: bool = True) -> str:
    """
    Build a construction with its vertex labels.

    Args:
        name: Construction name, e.g. "gn:15"
        ctx: MCP context for logging
        verify: Check saturation of the built graph

    Returns:
        JSON with graph6, edge counts and labels
    """
    await ctx.info(f"Building construction '{name}'")
    return await construct_tool.build_construction(name, verify)


def main():
    """Main entry point."""
    logger.info("Starting K3,3 Saturation MCP Server")
    logger.info(f"Configuration: {get_config()}")

    try:
        mcp.run(transport='stdio')
    except KeyboardInterrupt:
        logger.info("Server shutting down...")
    except Exception as e:
        logger.error(f"Server error: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
