from graphca.cli import main

main()
