#!/usr/bin/env python3
"""
lts-envelope Setup Script
=========================
Interactive setup script to write the .env file the CLI reads.
"""

from pathlib import Path


def ask_int(prompt: str, default: int, minimum: int = 1) -> int:
    answer = input(f"{prompt} (default: {default}): ").strip()
    if answer.isdigit() and int(answer) >= minimum:
        return int(answer)
    if answer:
        print(f"❌ Expected an integer >= {minimum}, keeping {default}")
    return default


def main():
    print("🚀 Welcome to lts-envelope Setup!")
    print("=" * 50)
    print()

    # Check if .env exists
    env_file = Path(".env")
    if env_file.exists():
        print("📋 Found existing .env file")
        overwrite = input("Do you want to update it? (y/N): ").lower().strip()
        if overwrite != "y":
            print("Setup cancelled.")
            return
    else:
        print("📋 Creating new .env file...")

    # Copy from template
    template_file = Path(".env.example")
    if not template_file.exists():
        print("❌ .env.example template not found!")
        return

    content = template_file.read_text()

    print()
    print("⚙️  Computation Defaults")
    print("-" * 25)
    degree = ask_int("Default degree bound N", 3)
    max_degree = ask_int("Largest degree bound accepted", max(8, degree), minimum=degree)
    content = content.replace("DEFAULT_DEGREE=3", f"DEFAULT_DEGREE={degree}")
    content = content.replace("MAX_DEGREE=8", f"MAX_DEGREE={max_degree}")

    print()
    print("🎲 Randomized Identity Checks")
    print("-" * 30)
    cases = ask_int("Random cases per check", 50)
    content = content.replace("RANDOM_CASES=50", f"RANDOM_CASES={cases}")
    seed = input("Random seed (default: 20240101): ").strip()
    if seed.lstrip("-").isdigit():
        content = content.replace("RANDOM_SEED=20240101", f"RANDOM_SEED={seed}")

    print()
    output_format = input("Default output format, text or json (default: text): ").strip().lower()
    if output_format in ("text", "json"):
        content = content.replace("DEFAULT_OUTPUT_FORMAT=text", f"DEFAULT_OUTPUT_FORMAT={output_format}")

    env_file.write_text(content)

    print()
    print("🎉 Setup Complete!")
    print("=" * 20)
    print()
    print("Next steps:")
    print("1. Install dependencies: pip install -e '.[dev]'")
    print("2. List the catalog: lts-envelope catalog")
    print("3. Run the checks: ./start.sh")
    print()
    print("Need help? Check the README.md file for detailed instructions.")


if __name__ == "__main__":
    main()
