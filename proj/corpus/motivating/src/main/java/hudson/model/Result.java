package hudson.model;

public enum Result {
    SUCCESS, UNSTABLE, FAILURE;

    public boolean isWorseThan(Result other) {
        return ordinal() > other.ordinal();
    }
}
