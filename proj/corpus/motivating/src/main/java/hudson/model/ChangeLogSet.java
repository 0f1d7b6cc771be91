package hudson.model;

public class ChangeLogSet {
    private final String message;

    public ChangeLogSet(String message) {
        this.message = message;
    }

    public String getMessage() {
        return message;
    }
}
